use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use witt_cli::checks;
use witt_cli::render::{use_color, write_text};
use witt_cli::report::{Check, Parameters, Report, Section};
use witt_core::generation::{check_agreement, default_cutoff};
use witt_core::{generates_criterion, parse_derivation, Error};

/// Random fields added to the fixed generation battery by `verify`.
const RANDOM_GENERATION_CASES: usize = 8;

#[derive(Parser)]
#[command(
    name = "witt",
    version,
    about = "Graded structure of polynomial vector fields, checked exactly"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Number of variables.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u16).range(2..=8))]
    n: u16,
    /// Largest graded degree to check.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(i32).range(0..=10))]
    max_degree: i32,
    /// Degree cutoff for the closure oracle (default: top degree + 3).
    #[arg(long, global = true, value_parser = clap::value_parser!(i32).range(1..))]
    cutoff: Option<i32>,
    /// Also write the report as JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples per randomized check.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of W, M and N per degree against enumeration and ranks.
    Dims,
    /// Direct-sum decomposition, invariance and projection identities.
    Decompose,
    /// Maximal vectors and weights of M and N.
    Hw,
    /// Bracket products between graded pieces.
    Products,
    /// Isomorphisms between the pieces M_i and N_j.
    Iso,
    /// Generation test for one vector field.
    Generates {
        /// Vector field, e.g. "x1^2 d1 - 2/3*x1*x2 d2" or "x1*E".
        #[arg(long)]
        expr: String,
        /// Also run the truncated-closure oracle.
        #[arg(long)]
        oracle: bool,
        /// Fail unless the criterion gives this verdict.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Every check above plus the generation battery and algebra laws.
    Verify,
}

enum Failure {
    Usage(String),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e)
    }
}

fn generates(
    g: &Global,
    expr: &str,
    oracle: bool,
    expect: Option<bool>,
) -> Result<Section, Failure> {
    let n = usize::from(g.n);
    let d = parse_derivation(expr, n).map_err(|e| Failure::Usage(format!("--expr: {e}")))?;
    if oracle {
        let cutoff = g.cutoff.unwrap_or_else(|| default_cutoff(&d));
        let a = check_agreement(&d, cutoff).map_err(|e| match e {
            Error::CutoffTooSmall { .. } => Failure::Usage(format!("--cutoff: {e}")),
            e => Failure::Internal(e),
        })?;
        let mut check = checks::agreement_check(&a);
        check.passed &= expect.map_or(true, |e| e == a.verdict.generates);
        return Ok(Section::new("generation", vec![check]));
    }
    let v = generates_criterion(&d)?;
    let reasons: Vec<String> = v
        .reasons
        .iter()
        .map(|r| json!(r).as_str().unwrap_or_default().to_string())
        .collect();
    let text = format!("criterion {} ({})", v.generates, reasons.join(", "));
    let passed = expect.map_or(true, |e| e == v.generates);
    let check = Check::new(d.to_string(), passed, text, json!({ "verdict": v }));
    Ok(Section::new("generation", vec![check]))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    let n = usize::from(g.n);
    let (name, sections) = match &cli.command {
        Command::Dims => ("dims", vec![checks::dims(n, g.max_degree)?]),
        Command::Decompose => (
            "decompose",
            vec![checks::decompose(n, g.max_degree, g.seed, g.samples)?],
        ),
        Command::Hw => ("hw", vec![checks::highest_weights(n, g.max_degree)?]),
        Command::Products => ("products", vec![checks::products(n, g.max_degree)?]),
        Command::Iso => ("iso", vec![checks::isomorphisms(n, g.max_degree)?]),
        Command::Generates {
            expr,
            oracle,
            expect,
        } => ("generates", vec![generates(g, expr, *oracle, *expect)?]),
        Command::Verify => (
            "verify",
            vec![
                checks::dims(n, g.max_degree)?,
                checks::decompose(n, g.max_degree, g.seed, g.samples)?,
                checks::highest_weights(n, g.max_degree)?,
                checks::products(n, g.max_degree)?,
                checks::isomorphisms(n, g.max_degree)?,
                checks::generation(n, g.seed, RANDOM_GENERATION_CASES)?,
                checks::laws(n, g.seed, g.samples)?,
            ],
        ),
    };
    let expr = match &cli.command {
        Command::Generates { expr, .. } => Some(expr.clone()),
        _ => None,
    };
    let parameters = Parameters {
        n,
        max_degree: g.max_degree,
        cutoff: g.cutoff,
        seed: g.seed,
        samples: g.samples,
        expr,
    };
    Ok(Report::new(name, parameters, sections))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_text(&mut std::io::stdout().lock(), &report, use_color()) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(1);
    }
    if let Some(path) = &cli.global.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if report.summary.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

//! Plain-text rendering of a [`Report`].

use std::io::{self, IsTerminal, Write};

use crate::report::Report;

/// Color is used only on a terminal and only when `NO_COLOR` is unset.
pub fn use_color() -> bool {
    std::env::var_os("NO_COLOR").map_or(true, |v| v.is_empty()) && io::stdout().is_terminal()
}

fn status(passed: bool, color: bool) -> &'static str {
    match (passed, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    }
}

pub fn write_text<W: Write>(out: &mut W, report: &Report, color: bool) -> io::Result<()> {
    let p = &report.parameters;
    writeln!(
        out,
        "{} (n = {}, max degree = {}, seed = {})",
        report.command, p.n, p.max_degree, p.seed
    )?;
    for section in &report.results {
        writeln!(out)?;
        writeln!(out, "{} [{}]", section.name, status(section.passed, color))?;
        let width = section
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .min(32);
        for c in &section.checks {
            writeln!(
                out,
                "  {}  {:<width$}  {}",
                status(c.passed, color),
                c.name,
                c.text
            )?;
        }
    }
    let s = &report.summary;
    writeln!(out)?;
    writeln!(out, "{}/{} checks passed", s.passed, s.checks)?;
    Ok(())
}

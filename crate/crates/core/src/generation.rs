//! When does a vector field `D` generate all of `W_n` together with the
//! affine algebra `L = W^[-1] + W^[0]`?
//!
//! [`generates_criterion`] is the closed-form test on the graded components
//! of `D`. [`truncated_closure`] is an independent brute-force oracle that
//! builds the subalgebra `<L, D>` degree by degree up to a cutoff.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::derlie::{reassemble, Derivation, HomogeneousDerivation};
use crate::error::{Error, Result};
use crate::graded::{dim_w, GradedBasis};
use crate::linalg::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    DivConstant,
    TopDegreeBelowOne,
    DegreeOneEulerMultiple,
    CriterionMet,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerationVerdict {
    pub generates: bool,
    pub reasons: Vec<Reason>,
    /// Top graded degree `k`; `None` for the zero field.
    pub top_degree: Option<i32>,
    #[serde(serialize_with = "serialize_components")]
    pub components: BTreeMap<i32, HomogeneousDerivation>,
}

fn serialize_components<S: Serializer>(
    parts: &BTreeMap<i32, HomogeneousDerivation>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(parts.iter().map(|(d, h)| (d.to_string(), h.to_string())))
}

/// `<L, D> = W_n` iff the top degree `k` is at least 1, `Div D` is not
/// constant, and either `k >= 2` or the degree-1 part is not `f * E_n`.
pub fn generates_criterion(d: &Derivation) -> Result<GenerationVerdict> {
    if d.nvars() < 2 {
        return Err(Error::TooFewVariables(d.nvars()));
    }
    let components = d.graded_split();
    let top_degree = components.keys().next_back().copied();
    let mut reasons = Vec::new();
    if top_degree.map_or(true, |k| k < 1) {
        reasons.push(Reason::TopDegreeBelowOne);
    }
    if d.divergence().is_constant() {
        reasons.push(Reason::DivConstant);
    }
    if top_degree == Some(1) && components[&1].is_euler_multiple() {
        reasons.push(Reason::DegreeOneEulerMultiple);
    }
    reasons.sort();
    let generates = reasons.is_empty();
    if generates {
        reasons.push(Reason::CriterionMet);
    }
    Ok(GenerationVerdict {
        generates,
        reasons,
        top_degree,
        components,
    })
}

/// Membership in `W_c`, the fields of constant divergence.
pub fn wc_membership(d: &Derivation) -> bool {
    d.divergence().is_constant()
}

/// Cutoff used by default for the closure oracle: `max(k, 0) + 3`.
pub fn default_cutoff(d: &Derivation) -> i32 {
    d.top_degree().unwrap_or(0).max(0) + 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeFill {
    pub achieved: usize,
    pub full: usize,
}

impl DegreeFill {
    pub fn is_full(&self) -> bool {
        self.achieved == self.full
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureTrace {
    pub cutoff: i32,
    pub per_degree: BTreeMap<i32, DegreeFill>,
    pub iterations: usize,
    pub stable: bool,
    /// Achieved dimension per degree after each iteration.
    pub history: Vec<BTreeMap<i32, usize>>,
}

impl ClosureTrace {
    pub fn all_full(&self) -> bool {
        self.per_degree.values().all(DegreeFill::is_full)
    }

    /// Degrees where the closure stayed short of the full piece.
    pub fn deficits(&self) -> Vec<i32> {
        self.per_degree
            .iter()
            .filter(|(_, f)| !f.is_full())
            .map(|(d, _)| *d)
            .collect()
    }
}

fn check_cutoff(d: &Derivation, cutoff: i32) -> Result<()> {
    if d.nvars() < 2 {
        return Err(Error::TooFewVariables(d.nvars()));
    }
    if cutoff < 1 {
        return Err(Error::InvalidDegree {
            degree: cutoff,
            min: 1,
        });
    }
    if let Some(k) = d.top_degree().filter(|&k| k > cutoff) {
        return Err(Error::CutoffTooSmall { degree: k, cutoff });
    }
    Ok(())
}

struct Level {
    basis: GradedBasis,
    span: Subspace,
    /// Generators whose brackets have all been taken.
    gens: Vec<Derivation>,
}

fn dims(levels: &[Level]) -> BTreeMap<i32, usize> {
    levels
        .iter()
        .enumerate()
        .map(|(k, l)| (k as i32 - 1, l.span.dim()))
        .collect()
}

/// Builds `<L, D>` inside `W^[-1] + ... + W^[cutoff]`.
///
/// Seeds are the bases of `W^[-1]`, `W^[0]` and the graded components of
/// `D`. Brackets landing above the cutoff are dropped, so each reported
/// dimension is a lower bound for `dim (<L, D> cap W^[i])`. The loop stops
/// when an iteration adds nothing.
pub fn truncated_closure(d: &Derivation, cutoff: i32) -> Result<ClosureTrace> {
    check_cutoff(d, cutoff)?;
    let n = d.nvars();
    let offset = |deg: i32| (deg + 1) as usize;
    let mut levels = (-1..=cutoff)
        .map(|deg| {
            let basis = GradedBasis::new(n, deg)?;
            let span = Subspace::zero(basis.len());
            Ok(Level {
                basis,
                span,
                gens: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut frontier: Vec<(i32, Derivation)> = Vec::new();
    for deg in [-1, 0] {
        frontier.extend(
            levels[offset(deg)]
                .basis
                .elements()
                .map(|e| (deg, e.into_derivation())),
        );
    }
    frontier.extend(
        d.graded_split()
            .into_iter()
            .map(|(deg, h)| (deg, h.into_derivation())),
    );

    // Seeds are inserted up front. Afterwards each level brackets every
    // generator of the previous level with all generators already
    // processed, so each pair is bracketed once. Results are inserted
    // immediately, which lets a degree that fills up mid-level stop
    // producing work.
    let mut pending = Vec::new();
    for (deg, v) in frontier {
        let level = &mut levels[offset(deg)];
        if level.span.insert(level.basis.coords_of(&v)?)? {
            pending.push((deg, v));
        }
    }
    let mut history = vec![dims(&levels)];
    let mut iterations = 0;
    while !pending.is_empty() {
        iterations += 1;
        let mut next = Vec::new();
        for (deg, v) in pending {
            for other in -1..=cutoff {
                let target = deg + other;
                if !(-1..=cutoff).contains(&target) {
                    continue;
                }
                let mut k = 0;
                while k < levels[offset(other)].gens.len() && !levels[offset(target)].span.is_full()
                {
                    let w = v.bracket(&levels[offset(other)].gens[k])?;
                    k += 1;
                    let level = &mut levels[offset(target)];
                    if !w.is_zero() && level.span.insert(level.basis.coords_of(&w)?)? {
                        next.push((target, w));
                    }
                }
            }
            levels[offset(deg)].gens.push(v);
        }
        history.push(dims(&levels));
        pending = next;
    }

    let per_degree = levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            (
                k as i32 - 1,
                DegreeFill {
                    achieved: l.span.dim(),
                    full: l.basis.len(),
                },
            )
        })
        .collect();
    Ok(ClosureTrace {
        cutoff,
        per_degree,
        iterations,
        stable: true,
        history,
    })
}

/// Per-degree result of [`truncated_closure_ungraded`].
#[derive(Debug, Clone)]
pub struct UngradedClosure {
    pub total_dim: usize,
    /// Projection of the closure onto each `W^[i]`.
    pub per_degree: BTreeMap<i32, Subspace>,
}

impl UngradedClosure {
    /// True if the closure is the direct sum of its projections.
    pub fn is_graded(&self) -> bool {
        self.per_degree.values().map(Subspace::dim).sum::<usize>() == self.total_dim
    }
}

fn truncate(d: &Derivation, cutoff: i32) -> Derivation {
    let mut parts = d.graded_split();
    parts.retain(|&deg, _| deg <= cutoff);
    reassemble(d.nvars(), &parts)
}

/// Same closure as [`truncated_closure`], but working in the whole truncated
/// space with `D` seeded as a single inhomogeneous element. Slower; used to
/// cross-check that seeding the graded components changes nothing.
pub fn truncated_closure_ungraded(d: &Derivation, cutoff: i32) -> Result<UngradedClosure> {
    check_cutoff(d, cutoff)?;
    let n = d.nvars();
    let bases = (-1..=cutoff)
        .map(|deg| GradedBasis::new(n, deg))
        .collect::<Result<Vec<_>>>()?;
    let offsets: Vec<usize> = bases
        .iter()
        .scan(0, |acc, b| {
            let start = *acc;
            *acc += b.len();
            Some(start)
        })
        .collect();
    let total: usize = bases.iter().map(GradedBasis::len).sum();
    let coords = |v: &Derivation| -> Result<Vec<crate::polyring::Rational>> {
        let mut out = vec![num_traits::Zero::zero(); total];
        for (deg, h) in v.graded_split() {
            let k = (deg + 1) as usize;
            let local = bases[k].coords_of(h.derivation())?;
            out[offsets[k]..offsets[k] + local.len()].clone_from_slice(&local);
        }
        Ok(out)
    };

    let mut span = Subspace::zero(total);
    let mut gens: Vec<Derivation> = Vec::new();
    let mut frontier: Vec<Derivation> = bases[0]
        .elements()
        .chain(bases[1].elements())
        .map(HomogeneousDerivation::into_derivation)
        .collect();
    frontier.push(d.clone());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in frontier {
            if !span.insert(coords(&v)?)? {
                continue;
            }
            for g in &gens {
                let w = truncate(&v.bracket(g)?, cutoff);
                if !w.is_zero() {
                    next.push(w);
                }
            }
            gens.push(v);
        }
        frontier = next;
    }

    let mut per_degree = BTreeMap::new();
    for (k, b) in bases.iter().enumerate() {
        let block = span
            .basis()
            .iter()
            .map(|row| row[offsets[k]..offsets[k] + b.len()].to_vec());
        per_degree.insert(k as i32 - 1, Subspace::from_vectors(b.len(), block)?);
    }
    Ok(UngradedClosure {
        total_dim: span.dim(),
        per_degree,
    })
}

/// Outcome of running the criterion against the closure oracle.
#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub expression: String,
    pub verdict: GenerationVerdict,
    pub trace: ClosureTrace,
    /// Criterion true and every degree filled, or criterion false and some
    /// degree left short.
    pub agrees: bool,
}

pub fn check_agreement(d: &Derivation, cutoff: i32) -> Result<Agreement> {
    let verdict = generates_criterion(d)?;
    let trace = truncated_closure(d, cutoff)?;
    let agrees = verdict.generates == trace.all_full();
    Ok(Agreement {
        expression: d.to_string(),
        verdict,
        trace,
        agrees,
    })
}

/// Sanity bound: the closure never exceeds the full pieces.
pub fn trace_within_bounds(n: usize, trace: &ClosureTrace) -> Result<bool> {
    for (&deg, fill) in &trace.per_degree {
        if fill.full != dim_w(n, deg)? || fill.achieved > fill.full {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixed expressions for the criterion/oracle comparison, as `(n, text)`.
/// Covers every reason code on both sides of the criterion.
pub const FIXED_BATTERY: &[(usize, &str)] = &[
    (2, "x1^2 d1"),
    (2, "x1*E"),
    (2, "x1^2 d2"),
    (2, "x1^3 d1"),
    (2, "0"),
    (2, "x1 d1 + d2"),
    (2, "x1*x2 d1"),
    (2, "x2^2 d2"),
    (2, "x1^2*E"),
    (2, "x1^2 d2 + d1"),
    (2, "x1*E + x2 d1"),
    (2, "x1*E + x1^2 d2"),
    (2, "x2^3 d1"),
    (2, "x1*x2^2 d1 - x2^3 d2"),
    (2, "x1^4 d1"),
    (2, "x1^2*x2 d1 - x1*x2^2 d2"),
    (3, "x1^2 d1"),
    (3, "x1*E"),
    (3, "x2^2 d1"),
    (3, "x1*x2 d3"),
    (3, "x1*x3 d3"),
    (3, "x1^2*E"),
    (3, "x1^3 d2"),
    (3, "x3^3 d3"),
    (3, "x1*x2*x3 d1"),
    (3, "E"),
    (3, "d1 + x2 d3"),
    (3, "x1^4 d1 + x2 d1"),
];

/// The entries of [`FIXED_BATTERY`] with `n` in `ns`, followed by
/// `random_count` seeded fields with `n` drawn from `ns` and top degree at
/// most 3. Every second random field has its positive-degree part
/// projected onto the divergence-free piece.
pub fn battery(ns: &[usize], seed: u64, random_count: usize) -> Result<Vec<Derivation>> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let mut out = FIXED_BATTERY
        .iter()
        .filter(|(n, _)| ns.contains(n))
        .map(|&(n, text)| crate::expr::parse_derivation(text, n))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for j in 0..random_count {
        let Some(&n) = ns.choose(&mut rng) else { break };
        let k = rng.gen_range(1..=3);
        let mut parts = BTreeMap::new();
        for deg in -1..=k {
            if deg == k || rng.gen_bool(0.5) {
                let mut h = crate::random::sparse_homogeneous(&mut rng, n, deg, 3)?;
                if j % 2 == 1 && deg >= 1 {
                    h = crate::graded::project_m(&h)?;
                }
                parts.insert(deg, h);
            }
        }
        out.push(reassemble(n, &parts));
    }
    Ok(out)
}

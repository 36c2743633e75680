//! Spans of brackets between graded pieces and the table of products
//! `[W^[i], W^[j]]`, `[M_i, M_j]`, `[N_i, N_j]`, `[M_i, N_j]`,
//! `[W^[-1], N_j]` and `[W^[-1], M_j]`.

use std::collections::HashMap;

use serde::Serialize;

use crate::derlie::Derivation;
use crate::error::{Error, Result};
use crate::graded::{dim_m, dim_n, dim_w, Family, GradedBasis, GradedSubspace};
use crate::linalg::Subspace;

/// Span of `[a, b]` over basis pairs of `a` and `b`, as a subspace of
/// `W^[i+j]`. Below degree -1 the result is the zero space.
pub fn bracket_span(a: &GradedSubspace, b: &GradedSubspace) -> Result<GradedSubspace> {
    if a.n != b.n {
        return Err(Error::VariableCountMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let n = a.n;
    let degree = a.degree + b.degree;
    if degree < -1 {
        return Ok(GradedSubspace {
            n,
            degree,
            space: Subspace::zero(0),
        });
    }
    let left = derivations_of(n, a)?;
    let right = derivations_of(n, b)?;
    let target = GradedBasis::new(n, degree)?;
    let mut span = Subspace::zero(target.len());
    'outer: for x in &left {
        for y in &right {
            if span.is_full() {
                break 'outer;
            }
            let z = x.bracket(y)?;
            if !z.is_zero() {
                span.insert(target.coords_of(&z)?)?;
            }
        }
    }
    Ok(GradedSubspace {
        n,
        degree,
        space: span,
    })
}

fn derivations_of(n: usize, s: &GradedSubspace) -> Result<Vec<Derivation>> {
    let b = GradedBasis::new(n, s.degree)?;
    if b.len() != s.space.ambient_dim() {
        return Err(Error::DimensionMismatch {
            left: b.len(),
            right: s.space.ambient_dim(),
        });
    }
    s.space.basis().iter().map(|v| b.derivation_of(v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Zero,
    EqualsM,
    EqualsN,
    EqualsW,
    OtherSubspace,
}

/// Compares a subspace against zero, `M`, `N` and the full piece, in that
/// order. `M` and `N` only exist in degrees `>= 0`.
pub fn classify(s: &GradedSubspace) -> Result<Classification> {
    if s.space.is_zero() {
        return Ok(Classification::Zero);
    }
    if s.degree >= 0 {
        if s.space == GradedSubspace::piece(s.n, s.degree, Family::M)?.space {
            return Ok(Classification::EqualsM);
        }
        if s.space == GradedSubspace::piece(s.n, s.degree, Family::N)?.space {
            return Ok(Classification::EqualsN);
        }
    }
    if s.space.is_full() {
        return Ok(Classification::EqualsW);
    }
    Ok(Classification::OtherSubspace)
}

/// Which product is being taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductCase {
    WW,
    MM,
    NN,
    MN,
    DerivN,
    DerivM,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub n: usize,
    pub case: ProductCase,
    pub i: i32,
    pub j: i32,
    pub left: String,
    pub right: String,
    pub result_degree: i32,
    pub result_dim: usize,
    pub classification: Classification,
    pub expected: Classification,
    pub passed: bool,
}

fn label(family: Family, degree: i32) -> String {
    match family {
        Family::W => format!("W[{degree}]"),
        Family::M => format!("M{degree}"),
        Family::N => format!("N{degree}"),
    }
}

/// The product table: what `[left_i, right_j]` should be.
pub fn expected_classification(case: ProductCase, i: i32, j: i32) -> Classification {
    use Classification::*;
    match case {
        ProductCase::WW if i + j < -1 => Zero,
        ProductCase::WW if i == 0 && j == 0 => EqualsM,
        ProductCase::WW => EqualsW,
        ProductCase::MM => EqualsM,
        ProductCase::NN if i == j => Zero,
        ProductCase::NN => EqualsN,
        ProductCase::MN => match (i, j) {
            (0, 0) => Zero,
            (0, _) => EqualsN,
            (_, 0) => EqualsM,
            _ => EqualsW,
        },
        ProductCase::DerivN => EqualsW,
        // d/dx_k preserves zero divergence, and M_{j-1} is irreducible
        ProductCase::DerivM if j == 0 => EqualsW,
        ProductCase::DerivM => EqualsM,
    }
}

/// Dimension implied by a classification of a subspace of `W^[degree]`.
fn implied_dim(n: usize, degree: i32, c: Classification) -> Result<Option<usize>> {
    Ok(match c {
        Classification::Zero => Some(0),
        Classification::EqualsM => Some(dim_m(n, degree)?),
        Classification::EqualsN => Some(dim_n(n, degree)?),
        Classification::EqualsW => Some(dim_w(n, degree)?),
        Classification::OtherSubspace => None,
    })
}

/// Enumerates the product cases up to result degree `max_degree`:
///
/// * `[W^[i], W^[j]]` for `-1 <= i <= j`,
/// * `[M_i, M_j]`, `[N_i, N_j]` for `0 <= i <= j`,
/// * `[M_i, N_j]` for all `i, j >= 0`,
/// * `[W^[-1], N_j]`, `[W^[-1], M_j]` for `j >= 0`,
///
/// and checks each span against [`expected_classification`].
pub fn product_cases(max_degree: i32) -> Vec<(ProductCase, i32, i32)> {
    let mut cases = Vec::new();
    for i in -1..=max_degree + 1 {
        for j in i..=max_degree + 1 {
            if i + j <= max_degree {
                cases.push((ProductCase::WW, i, j));
            }
        }
    }
    for i in 0..=max_degree {
        for j in i..=max_degree - i {
            cases.push((ProductCase::MM, i, j));
            cases.push((ProductCase::NN, i, j));
        }
    }
    for i in 0..=max_degree {
        for j in 0..=max_degree - i {
            cases.push((ProductCase::MN, i, j));
        }
    }
    for j in 0..=max_degree + 1 {
        cases.push((ProductCase::DerivN, -1, j));
        cases.push((ProductCase::DerivM, -1, j));
    }
    cases.sort();
    cases
}

fn families(case: ProductCase) -> (Family, Family) {
    match case {
        ProductCase::WW => (Family::W, Family::W),
        ProductCase::MM => (Family::M, Family::M),
        ProductCase::NN => (Family::N, Family::N),
        ProductCase::MN => (Family::M, Family::N),
        ProductCase::DerivN => (Family::W, Family::N),
        ProductCase::DerivM => (Family::W, Family::M),
    }
}

pub fn verify_products(n: usize, max_degree: i32) -> Result<Vec<ProductReport>> {
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    if max_degree < 1 {
        return Err(Error::InvalidDegree {
            degree: max_degree,
            min: 1,
        });
    }
    let mut pieces: HashMap<(Family, i32), GradedSubspace> = HashMap::new();
    let mut piece = |f: Family, d: i32| -> Result<GradedSubspace> {
        if let Some(p) = pieces.get(&(f, d)) {
            return Ok(p.clone());
        }
        let p = GradedSubspace::piece(n, d, f)?;
        pieces.insert((f, d), p.clone());
        Ok(p)
    };
    let mut reports = Vec::new();
    for (case, i, j) in product_cases(max_degree) {
        let (fl, fr) = families(case);
        let span = bracket_span(&piece(fl, i)?, &piece(fr, j)?)?;
        let classification = classify(&span)?;
        let expected = expected_classification(case, i, j);
        let degree = i + j;
        let consistent = degree < -1
            || implied_dim(n, degree, classification)?.map_or(true, |d| d == span.space.dim());
        reports.push(ProductReport {
            n,
            case,
            i,
            j,
            left: label(fl, i),
            right: label(fr, j),
            result_degree: degree,
            result_dim: span.space.dim(),
            classification,
            expected,
            passed: consistent && classification == expected,
        });
    }
    Ok(reports)
}

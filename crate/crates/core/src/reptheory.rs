//! `W^[0] = gl_n` acting on the graded pieces `W^[m]`.
//!
//! The Borel subalgebra is the upper-triangular one: positive root vectors
//! are `x_a d/dx_b` with `a < b` and the Cartan basis is
//! `h_a = x_a d/dx_a - x_n d/dx_n`, `a = 1..n-1`. A maximal (highest-weight)
//! vector is one killed by every positive root vector.

use std::collections::VecDeque;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::derlie::{euler, Derivation, HomogeneousDerivation};
use crate::error::{Error, Result};
use crate::graded::{submodule_m, submodule_n, Family, GradedBasis, GradedComponent};
use crate::linalg::{combine, is_zero_vector, Matrix, Subspace};
use crate::polyring::{Monomial, Rational};

/// Adjoint action of a linear vector field on `W^[m]` in the canonical basis.
#[derive(Debug, Clone)]
pub struct ActionOperator {
    pub generator: Derivation,
    pub matrix: Matrix,
}

impl ActionOperator {
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.mul_vec(v)
    }
}

/// Matrix of `ad g` on `W^[m]`; column `k` holds the coordinates of
/// `[g, basis[k]]`.
pub fn action_matrix(g: &Derivation, n: usize, m: i32) -> Result<ActionOperator> {
    let b = GradedBasis::new(n, m)?;
    action_on(&b, g)
}

pub(crate) fn action_on(b: &GradedBasis, g: &Derivation) -> Result<ActionOperator> {
    if g.nvars() != b.nvars() {
        return Err(Error::VariableCountMismatch {
            left: b.nvars(),
            right: g.nvars(),
        });
    }
    if !g.is_zero() && g.homogeneous_degree() != Some(0) {
        return Err(Error::NotLinear);
    }
    let columns = b
        .elements()
        .map(|e| b.coords_of(&g.bracket(e.derivation())?))
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionOperator {
        generator: g.clone(),
        matrix: Matrix::from_columns(&columns, b.len())?,
    })
}

/// `x_a d/dx_b` for all `a < b`.
pub fn positive_root_vectors(n: usize) -> Vec<Derivation> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(Derivation::linear(n, a, b));
        }
    }
    out
}

/// `h_a = x_a d/dx_a - x_n d/dx_n` for `a = 1..n-1`.
pub fn cartan_basis(n: usize) -> Vec<Derivation> {
    (0..n - 1)
        .map(|a| &Derivation::linear(n, a, a) - &Derivation::linear(n, n - 1, n - 1))
        .collect()
}

/// All `n^2` fields `x_a d/dx_b`, spanning `W^[0]`.
pub fn gl_generators(n: usize) -> Vec<Derivation> {
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(Derivation::linear(n, a, b));
        }
    }
    out
}

/// Joint kernel of the positive root vectors on `W^[m]`, optionally
/// restricted to the subspace `within`.
///
/// # Panics
///
/// Panics if a computed vector violates the shape forced on maximal vectors:
/// the `d/dx_1` coefficient must be a multiple of `x1^(m+1)` and the
/// `d/dx_i` coefficient (`i >= 2`) may only involve `x1` and `x_i`.
pub fn maximal_vectors(n: usize, m: i32, within: Option<&Subspace>) -> Result<Subspace> {
    if m < 0 {
        return Err(Error::InvalidDegree { degree: m, min: 0 });
    }
    let b = GradedBasis::new(n, m)?;
    let mut stacked: Option<Matrix> = None;
    for g in positive_root_vectors(n) {
        let a = action_on(&b, &g)?.matrix;
        stacked = Some(match stacked {
            None => a,
            Some(s) => s.vstack(&a)?,
        });
    }
    let stacked = stacked.expect("n >= 2 gives at least one root vector");
    let result = match within {
        None => stacked.nullspace(),
        Some(s) => {
            if s.ambient_dim() != b.len() {
                return Err(Error::DimensionMismatch {
                    left: b.len(),
                    right: s.ambient_dim(),
                });
            }
            if s.is_zero() {
                Subspace::zero(b.len())
            } else {
                let images = s
                    .basis()
                    .iter()
                    .map(|v| stacked.mul_vec(v))
                    .collect::<Result<Vec<_>>>()?;
                let restricted = Matrix::from_columns(&images, stacked.rows())?;
                let kernel = restricted.nullspace();
                Subspace::from_vectors(
                    b.len(),
                    kernel
                        .basis()
                        .iter()
                        .map(|c| combine(s.basis(), c, b.len())),
                )?
            }
        }
    };
    for v in result.basis() {
        let d = b.derivation_of(v)?;
        assert!(
            has_maximal_vector_shape(&d, m),
            "maximal vector {d} is not of the expected shape"
        );
    }
    Ok(result)
}

/// Shape check: `D = c x1^(m+1) d/dx_1 + sum_{i>=2} f_i(x1, x_i) d/dx_i`.
pub fn has_maximal_vector_shape(d: &Derivation, m: i32) -> bool {
    let n = d.nvars();
    let top = Monomial::new({
        let mut e = vec![0; n];
        e[0] = (m + 1) as u32;
        e
    });
    let first_ok = d.coeff(0).terms().all(|(mono, _)| *mono == top);
    first_ok && (1..n).all(|i| d.coeff(i).uses_only(&[0, i]))
}

/// Eigenvalues on the Cartan basis plus the eigenvalue of `ad E_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector {
    pub cartan: Vec<i64>,
    pub euler_scalar: i64,
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cartan.iter().map(ToString::to_string).collect();
        write!(f, "({}; E={})", parts.join(", "), self.euler_scalar)
    }
}

fn eigenvalue(b: &GradedBasis, op: &Derivation, v: &[Rational], name: &str) -> Result<i64> {
    let d = b.derivation_of(v)?;
    let image = b.coords_of(&op.bracket(&d)?)?;
    let not_eigen = || Error::NotEigenvector {
        operator: name.to_string(),
    };
    let k = v.iter().position(|x| !x.is_zero()).ok_or_else(not_eigen)?;
    let lambda = &image[k] / &v[k];
    let consistent = image.iter().zip(v).all(|(w, x)| *w == &lambda * x);
    if !consistent || !lambda.is_integer() {
        return Err(not_eigen());
    }
    num_traits::ToPrimitive::to_i64(&lambda.to_integer()).ok_or_else(not_eigen)
}

/// Weight of a joint eigenvector of the Cartan basis and of `E_n`.
pub fn weight_of(v: &GradedComponent) -> Result<WeightVector> {
    let b = GradedBasis::new(v.n, v.m)?;
    if v.coords.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: b.len(),
            found: v.coords.len(),
        });
    }
    let cartan = cartan_basis(v.n)
        .iter()
        .enumerate()
        .map(|(a, h)| eigenvalue(&b, h, &v.coords, &format!("h_{}", a + 1)))
        .collect::<Result<Vec<_>>>()?;
    let euler_scalar = eigenvalue(&b, &euler(v.n)?, &v.coords, "E_n")?;
    Ok(WeightVector {
        cartan,
        euler_scalar,
    })
}

/// Smallest `gl_n`-invariant subspace of `W^[m]` containing `seeds`.
pub fn submodule_closure(n: usize, m: i32, seeds: &[GradedComponent]) -> Result<Subspace> {
    let b = GradedBasis::new(n, m)?;
    let ops = gl_generators(n)
        .iter()
        .map(|g| action_on(&b, g))
        .collect::<Result<Vec<_>>>()?;
    closure_under(&b, &ops, seeds.iter().map(|s| s.coords.clone()))
}

fn closure_under<I>(b: &GradedBasis, ops: &[ActionOperator], seeds: I) -> Result<Subspace>
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    let mut span = Subspace::zero(b.len());
    let mut queue: VecDeque<Vec<Rational>> = seeds.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        if span.is_full() {
            break;
        }
        if !span.insert(v.clone())? {
            continue;
        }
        for op in ops {
            let w = op.apply(&v)?;
            if !is_zero_vector(&w) {
                queue.push_back(w);
            }
        }
    }
    Ok(span)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    Inconclusive,
}

/// Result of the unique-maximal-vector test on an invariant subspace.
#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityCertificate {
    #[serde(skip)]
    pub subspace: Subspace,
    pub dimension: usize,
    pub hw_dimension: usize,
    pub hw_vectors: Vec<GradedComponent>,
    pub verdict: Verdict,
}

/// Checks that `s` is `gl_n`-invariant, then counts maximal vectors in it.
/// Exactly one (up to scalars) certifies irreducibility; more is
/// inconclusive.
pub fn certify_irreducible(n: usize, m: i32, s: &Subspace) -> Result<IrreducibilityCertificate> {
    let b = GradedBasis::new(n, m)?;
    for g in gl_generators(n) {
        let op = action_on(&b, &g)?;
        for v in s.basis() {
            if !s.contains(&op.apply(v)?)? {
                return Err(Error::NotInvariant {
                    generator: g.to_string(),
                });
            }
        }
    }
    let hw = maximal_vectors(n, m, Some(s))?;
    let hw_vectors = hw
        .basis()
        .iter()
        .map(|v| GradedComponent {
            n,
            m,
            coords: v.clone(),
        })
        .collect();
    let verdict = if hw.dim() == 1 {
        Verdict::Irreducible
    } else {
        Verdict::Inconclusive
    };
    Ok(IrreducibilityCertificate {
        subspace: s.clone(),
        dimension: s.dim(),
        hw_dimension: hw.dim(),
        hw_vectors,
        verdict,
    })
}

/// One of the irreducible pieces `M_i` or `N_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModuleDescriptor {
    pub family: Family,
    pub degree: i32,
}

impl ModuleDescriptor {
    pub fn m(degree: i32) -> Self {
        ModuleDescriptor {
            family: Family::M,
            degree,
        }
    }

    pub fn n(degree: i32) -> Self {
        ModuleDescriptor {
            family: Family::N,
            degree,
        }
    }

    pub fn subspace(&self, n: usize) -> Result<Subspace> {
        match self.family {
            Family::M => submodule_m(n, self.degree),
            Family::N => submodule_n(n, self.degree),
            Family::W => Ok(Subspace::full(crate::graded::dim_w(n, self.degree)?)),
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.family, self.degree)
    }
}

/// The unique maximal vector of `module` and its weight.
pub fn highest_weight(
    n: usize,
    module: ModuleDescriptor,
) -> Result<(GradedComponent, WeightVector)> {
    let s = module.subspace(n)?;
    let hw = maximal_vectors(n, module.degree, Some(&s))?;
    if hw.dim() != 1 {
        return Err(Error::AmbiguousHighestWeight {
            module: module.to_string(),
            count: hw.dim(),
        });
    }
    let v = GradedComponent {
        n,
        m: module.degree,
        coords: hw.basis()[0].clone(),
    };
    let w = weight_of(&v)?;
    Ok((v, w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isomorphism {
    /// Same highest weight and same `E_n` eigenvalue.
    IsoSlAndGl,
    /// Same highest weight for `sl_n`, but `E_n` acts by different scalars.
    IsoSlOnly,
    NonIso,
}

/// Compares highest weights: equal Cartan parts mean `sl_n`-isomorphic, and
/// the Euler scalar then decides the `gl_n` question.
pub fn classify_isomorphism(
    n: usize,
    a: ModuleDescriptor,
    b: ModuleDescriptor,
) -> Result<Isomorphism> {
    let (_, wa) = highest_weight(n, a)?;
    let (_, wb) = highest_weight(n, b)?;
    Ok(compare_weights(&wa, &wb))
}

pub fn compare_weights(a: &WeightVector, b: &WeightVector) -> Isomorphism {
    if a.cartan != b.cartan {
        Isomorphism::NonIso
    } else if a.euler_scalar == b.euler_scalar {
        Isomorphism::IsoSlAndGl
    } else {
        Isomorphism::IsoSlOnly
    }
}

/// `x1^m E_n` and `x1^(m+1) d/dx_n`, the expected maximal vectors of `N_m`
/// and `M_m`.
pub fn expected_maximal_vectors(
    n: usize,
    m: i32,
) -> Result<(HomogeneousDerivation, HomogeneousDerivation)> {
    let mut e = vec![0u32; n];
    e[0] = m as u32;
    let x1m =
        crate::polyring::Polynomial::term(n, num_traits::One::one(), Monomial::new(e.clone()));
    let in_n = HomogeneousDerivation::new(euler(n)?.mul_poly(&x1m)?, m)?;
    e[0] = (m + 1) as u32;
    let in_m = HomogeneousDerivation::new(
        Derivation::monomial_field(n, num_traits::One::one(), Monomial::new(e), n - 1),
        m,
    )?;
    Ok((in_n, in_m))
}

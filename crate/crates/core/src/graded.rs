//! Canonical bases of the homogeneous components `W^[m]` and the
//! decomposition `W^[m] = M_m + N_m` into divergence-free fields and
//! polynomial multiples of the Euler field.
//!
//! Basis order: by target index `i` ascending, then by the monomial `x^J`
//! in decreasing graded-lex order. For `n = 2, m = 1` this is
//! `x1^2 d1, x1*x2 d1, x2^2 d1, x1^2 d2, x1*x2 d2, x2^2 d2`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::derlie::{euler, Derivation, HomogeneousDerivation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::polyring::{int, Monomial, Polynomial, Rational};

fn check_args(n: usize, m: i32, min_degree: i32) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    if m < min_degree {
        return Err(Error::InvalidDegree {
            degree: m,
            min: min_degree,
        });
    }
    Ok(())
}

/// The monomial basis `{x^J d/dx_i : |J| = m + 1}` of `W^[m]`.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    n: usize,
    m: i32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

pub fn basis(n: usize, m: i32) -> Result<GradedBasis> {
    GradedBasis::new(n, m)
}

impl GradedBasis {
    pub fn new(n: usize, m: i32) -> Result<Self> {
        check_args(n, m, -1)?;
        let monomials = Monomial::all_of_degree(n, (m + 1) as u32);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, mono)| (mono.clone(), k))
            .collect();
        Ok(GradedBasis {
            n,
            m,
            monomials,
            index,
        })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.n * self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Position of `x^J d/dx_{i+1}`.
    pub fn position(&self, mono: &Monomial, i: usize) -> Option<usize> {
        self.index.get(mono).map(|k| i * self.monomials.len() + k)
    }

    /// `(target index, monomial)` of the `k`-th basis element.
    pub fn parts(&self, k: usize) -> (usize, &Monomial) {
        let per = self.monomials.len();
        (k / per, &self.monomials[k % per])
    }

    pub fn element(&self, k: usize) -> HomogeneousDerivation {
        let (i, mono) = self.parts(k);
        let d = Derivation::monomial_field(self.n, Rational::one(), mono.clone(), i);
        HomogeneousDerivation::new(d, self.m).expect("basis elements are homogeneous")
    }

    pub fn elements(&self) -> impl Iterator<Item = HomogeneousDerivation> + '_ {
        (0..self.len()).map(|k| self.element(k))
    }

    /// Basis elements in text form, in coordinate order.
    pub fn labels(&self) -> Vec<String> {
        self.elements().map(|e| e.to_string()).collect()
    }

    /// Coordinates of a derivation lying in `W^[m]`.
    pub fn coords_of(&self, d: &Derivation) -> Result<Vec<Rational>> {
        if d.nvars() != self.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: d.nvars(),
            });
        }
        let mut out = vec![Rational::zero(); self.len()];
        for (i, c) in d.coeffs().iter().enumerate() {
            for (mono, a) in c.terms() {
                let k = self
                    .position(mono, i)
                    .ok_or_else(|| match d.homogeneous_degree() {
                        Some(found) => Error::DegreeMismatch {
                            expected: self.m,
                            found,
                        },
                        None => Error::NotHomogeneous,
                    })?;
                out[k] = a.clone();
            }
        }
        Ok(out)
    }

    pub fn to_coords(&self, h: &HomogeneousDerivation) -> Result<GradedComponent> {
        if h.degree() != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: h.degree(),
            });
        }
        Ok(GradedComponent {
            n: self.n,
            m: self.m,
            coords: self.coords_of(h.derivation())?,
        })
    }

    pub fn derivation_of(&self, coords: &[Rational]) -> Result<Derivation> {
        if coords.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: coords.len(),
            });
        }
        let per = self.monomials.len();
        let mut polys = vec![Polynomial::zero(self.n); self.n];
        for (i, p) in polys.iter_mut().enumerate() {
            *p = Polynomial::from_terms(
                self.n,
                coords[i * per..(i + 1) * per]
                    .iter()
                    .zip(&self.monomials)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, mono)| (a.clone(), mono.exponents().to_vec())),
            );
        }
        Derivation::from_coeffs(polys)
    }

    pub fn from_coords(&self, c: &GradedComponent) -> Result<HomogeneousDerivation> {
        if (c.n, c.m) != (self.n, self.m) {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: c.m,
            });
        }
        HomogeneousDerivation::new(self.derivation_of(&c.coords)?, self.m)
    }
}

/// Coordinates of an element of `W^[m]` in the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedComponent {
    pub n: usize,
    pub m: i32,
    #[serde(serialize_with = "crate::serialize_rationals")]
    pub coords: Vec<Rational>,
}

impl GradedComponent {
    pub fn new(n: usize, m: i32, coords: Vec<Rational>) -> Result<Self> {
        let b = GradedBasis::new(n, m)?;
        if coords.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: b.len(),
                found: coords.len(),
            });
        }
        Ok(GradedComponent { n, m, coords })
    }

    pub fn zero(n: usize, m: i32) -> Result<Self> {
        let len = GradedBasis::new(n, m)?.len();
        Ok(GradedComponent {
            n,
            m,
            coords: vec![Rational::zero(); len],
        })
    }
}

pub fn to_coords(h: &HomogeneousDerivation) -> Result<GradedComponent> {
    GradedBasis::new(h.nvars(), h.degree())?.to_coords(h)
}

pub fn from_coords(c: &GradedComponent) -> Result<HomogeneousDerivation> {
    GradedBasis::new(c.n, c.m)?.from_coords(c)
}

fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for k in 0..b {
        acc = acc * BigUint::from(a - k) / BigUint::from(k + 1);
    }
    acc
}

fn factorial(a: u64) -> BigUint {
    (1..=a).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn to_usize(v: BigUint) -> usize {
    v.to_usize().expect("dimension fits in usize")
}

/// `dim W^[i] = n * C(n+i, i+1)`; accepts `i = -1`.
pub fn dim_w(n: usize, i: i32) -> Result<usize> {
    check_args(n, i, -1)?;
    let (n64, i64_) = (n as u64, (i + 1) as u64);
    Ok(to_usize(
        BigUint::from(n64) * binomial(n64 + i64_ - 1, i64_),
    ))
}

/// `dim N_i = C(n+i-1, i)`.
pub fn dim_n(n: usize, i: i32) -> Result<usize> {
    check_args(n, i, 0)?;
    let (n64, i64_) = (n as u64, i as u64);
    Ok(to_usize(binomial(n64 + i64_ - 1, i64_)))
}

/// `dim M_i = (n+i+1) (n+i-1)! / ((i+1)! (n-2)!)`.
pub fn dim_m(n: usize, i: i32) -> Result<usize> {
    check_args(n, i, 0)?;
    let (n64, i64_) = (n as u64, i as u64);
    let num = BigUint::from(n64 + i64_ + 1) * factorial(n64 + i64_ - 1);
    let den = factorial(i64_ + 1) * factorial(n64 - 2);
    Ok(to_usize(num / den))
}

/// The Euler part `f * E_n` with `f = Div(D) / (m + n)`.
pub fn project_n(d: &HomogeneousDerivation) -> Result<HomogeneousDerivation> {
    let (n, m) = (d.nvars(), d.degree());
    check_args(n, m, 0)?;
    let f = d
        .derivation()
        .divergence()
        .scale(&int(m as i64 + n as i64).recip());
    HomogeneousDerivation::new(euler(n)?.mul_poly(&f)?, m)
}

/// The divergence-free part `D - project_n(D)`.
pub fn project_m(d: &HomogeneousDerivation) -> Result<HomogeneousDerivation> {
    let euler_part = project_n(d)?;
    HomogeneousDerivation::new(d.derivation().try_sub(euler_part.derivation())?, d.degree())
}

/// Matrix of `Div : W^[m] -> Q[x]_m` with rows indexed by degree-`m` monomials.
pub fn divergence_matrix(b: &GradedBasis) -> Matrix {
    let n = b.nvars();
    let targets = Monomial::all_of_degree(n, b.degree().max(0) as u32);
    let row_of: HashMap<&Monomial, usize> =
        targets.iter().enumerate().map(|(r, t)| (t, r)).collect();
    let mut mat = Matrix::zeros(targets.len(), b.len());
    if b.degree() < 0 {
        return mat;
    }
    for k in 0..b.len() {
        let (i, mono) = b.parts(k);
        if let Some(t) = mono.div_var(i) {
            mat[(row_of[&t], k)] = int(i64::from(mono.exponents()[i]));
        }
    }
    mat
}

/// Coordinates of `M_m`: the kernel of the divergence on `W^[m]`.
pub fn submodule_m(n: usize, m: i32) -> Result<Subspace> {
    check_args(n, m, 0)?;
    let b = GradedBasis::new(n, m)?;
    Ok(divergence_matrix(&b).nullspace())
}

/// Coordinates of `N_m`: the span of `x^K * E_n` over `|K| = m`.
pub fn submodule_n(n: usize, m: i32) -> Result<Subspace> {
    check_args(n, m, 0)?;
    let b = GradedBasis::new(n, m)?;
    let e = euler(n)?;
    let vectors = Monomial::all_of_degree(n, m as u32)
        .into_iter()
        .map(|k| b.coords_of(&e.mul_poly(&Polynomial::term(n, Rational::one(), k))?))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_vectors(b.len(), vectors)
}

/// Family label for the pieces of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    W,
    M,
    N,
}

/// A subspace of `W^[degree]` together with its grading data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    pub n: usize,
    pub degree: i32,
    pub space: Subspace,
}

impl GradedSubspace {
    /// `W^[degree]`, `M_degree` or `N_degree`. For degree -2 the space is zero.
    pub fn piece(n: usize, degree: i32, family: Family) -> Result<Self> {
        let space = match family {
            Family::W if degree == -2 => Subspace::zero(0),
            Family::W => Subspace::full(dim_w(n, degree)?),
            Family::M => submodule_m(n, degree)?,
            Family::N => submodule_n(n, degree)?,
        };
        Ok(GradedSubspace { n, degree, space })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use crate::testutil::arb_homogeneous_in;
    use proptest::prelude::*;

    fn field(n: usize, c: Rational, e: &[u32], i: usize) -> Derivation {
        Derivation::monomial_field(n, c, Monomial::new(e.to_vec()), i)
    }

    fn hom(d: Derivation) -> HomogeneousDerivation {
        let deg = d.homogeneous_degree().unwrap();
        HomogeneousDerivation::new(d, deg).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = basis(2, -1).unwrap();
        assert_eq!(b.labels(), ["d1", "d2"]);
        assert_eq!(basis(2, 0).unwrap().len(), 4);
        let b = basis(2, 1).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(
            b.labels(),
            ["x1^2 d1", "x1*x2 d1", "x2^2 d1", "x1^2 d2", "x1*x2 d2", "x2^2 d2"]
        );
        assert!(basis(1, 0).is_err());
        assert!(basis(2, -2).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(
            (
                dim_w(2, 1).unwrap(),
                dim_m(2, 1).unwrap(),
                dim_n(2, 1).unwrap()
            ),
            (6, 4, 2)
        );
        assert_eq!(
            (
                dim_w(3, 0).unwrap(),
                dim_m(3, 0).unwrap(),
                dim_n(3, 0).unwrap()
            ),
            (9, 8, 1)
        );
        assert_eq!(
            (
                dim_w(3, 1).unwrap(),
                dim_m(3, 1).unwrap(),
                dim_n(3, 1).unwrap()
            ),
            (18, 15, 3)
        );
        assert_eq!(dim_w(4, -1).unwrap(), 4);
        assert!(dim_m(3, -1).is_err());
        assert!(dim_n(1, 2).is_err());
    }

    #[test]
    fn dimensions_match_enumeration_and_ranks() {
        for n in 2..=4 {
            for m in 0..=5 {
                let b = basis(n, m).unwrap();
                let w = dim_w(n, m).unwrap();
                assert_eq!(b.len(), w);
                let div_rank = divergence_matrix(&b).rank();
                assert_eq!(dim_m(n, m).unwrap(), w - div_rank, "n={n} m={m}");
                assert_eq!(dim_n(n, m).unwrap(), submodule_n(n, m).unwrap().dim());
                assert_eq!(dim_m(n, m).unwrap() + dim_n(n, m).unwrap(), w);
            }
        }
    }

    #[test]
    fn coordinate_examples() {
        let b = basis(2, 1).unwrap();
        let c = b.to_coords(&hom(field(2, int(1), &[2, 0], 0))).unwrap();
        assert_eq!(c.coords, crate::linalg::unit(6, 0));
        let zero = GradedComponent::zero(2, 1).unwrap();
        assert!(from_coords(&zero).unwrap().derivation().is_zero());
        let wrong = hom(field(2, int(1), &[1, 0], 0));
        assert!(b.to_coords(&wrong).is_err());
        assert!(GradedComponent::new(2, 1, vec![int(1)]).is_err());
    }

    #[test]
    fn projection_examples() {
        let e2 = euler(2).unwrap();
        let x1 = Polynomial::var(2, 0);

        let d = hom(field(2, int(1), &[2, 0], 0));
        let n_part = project_n(&d).unwrap();
        assert_eq!(
            n_part.derivation(),
            &e2.mul_poly(&x1.scale(&rat(2, 3))).unwrap()
        );
        let m_part = project_m(&d).unwrap();
        let expected = &field(2, rat(1, 3), &[2, 0], 0) - &field(2, rat(2, 3), &[1, 1], 1);
        assert_eq!(m_part.derivation(), &expected);
        assert!(m_part.derivation().divergence().is_zero());

        let d = hom(field(2, int(1), &[2, 0], 1));
        assert!(project_n(&d).unwrap().derivation().is_zero());
        assert_eq!(project_m(&d).unwrap(), d);

        let d = hom(e2.mul_poly(&x1).unwrap());
        assert_eq!(project_n(&d).unwrap(), d);
        assert!(project_m(&d).unwrap().derivation().is_zero());

        assert!(project_n(&hom(Derivation::partial(2, 0))).is_err());
    }

    #[test]
    fn submodule_examples() {
        let b = basis(2, 1).unwrap();
        let e2 = euler(2).unwrap();
        let expected = Subspace::from_vectors(
            6,
            (0..2).map(|i| {
                b.coords_of(&e2.mul_poly(&Polynomial::var(2, i)).unwrap())
                    .unwrap()
            }),
        )
        .unwrap();
        assert_eq!(submodule_n(2, 1).unwrap(), expected);
        assert_eq!(submodule_n(2, 1).unwrap().dim(), 2);
        assert_eq!(submodule_m(2, 0).unwrap().dim(), 3);
        assert_eq!(submodule_m(3, 2).unwrap().dim(), 24);
        assert_eq!(dim_m(3, 2).unwrap(), 24);
    }

    #[test]
    fn m_and_n_are_complementary() {
        for n in 2..=4 {
            for m in 0..=4 {
                let mm = submodule_m(n, m).unwrap();
                let nn = submodule_n(n, m).unwrap();
                assert!(mm.intersection(&nn).unwrap().is_zero());
                assert!(mm.sum(&nn).unwrap().is_full());
            }
        }
    }

    #[test]
    fn m_and_n_are_stable_under_linear_fields() {
        for n in 2..=3 {
            for m in 0..=3 {
                let b = basis(n, m).unwrap();
                for space in [submodule_m(n, m).unwrap(), submodule_n(n, m).unwrap()] {
                    for a in 0..n {
                        for c in 0..n {
                            let g = Derivation::linear(n, a, c);
                            for v in space.basis() {
                                let d = b.derivation_of(v).unwrap();
                                let image = b.coords_of(&g.bracket(&d).unwrap()).unwrap();
                                assert!(space.contains(&image).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn projection_identities(h in arb_homogeneous_in(3, 0, 3)) {
            let pn = project_n(&h).unwrap();
            let pm = project_m(&h).unwrap();
            prop_assert_eq!(&(pn.derivation() + pm.derivation()), h.derivation());
            prop_assert_eq!(project_n(&pn).unwrap(), pn.clone());
            prop_assert!(pm.derivation().divergence().is_zero());
            prop_assert!(pn.is_euler_multiple());
        }

        #[test]
        fn coordinates_round_trip(h in arb_homogeneous_in(3, -1, 3)) {
            let c = to_coords(&h).unwrap();
            prop_assert_eq!(from_coords(&c).unwrap(), h);
        }
    }
}

//! Polynomial vector fields `D = sum f_i d/dx_i`, their Lie bracket,
//! divergence and the standard grading.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;

use crate::error::{Error, Result};
use crate::polyring::{write_signed_term, Monomial, Polynomial, Rational};

/// A derivation of `Q[x1..xn]`; `coeffs[i]` is the coefficient of `d/dx_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    n: usize,
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn zero(n: usize) -> Self {
        Derivation {
            n,
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|p| p.nvars() != n) {
            return Err(Error::VariableCountMismatch {
                left: n,
                right: bad.nvars(),
            });
        }
        Ok(Derivation { n, coeffs })
    }

    /// `d/dx_{i+1}`.
    pub fn partial(n: usize, i: usize) -> Self {
        Self::monomial_field(n, Rational::one(), Monomial::one(n), i)
    }

    /// `c * x^J * d/dx_{i+1}`.
    pub fn monomial_field(n: usize, c: Rational, m: Monomial, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[i] = Polynomial::term(n, c, m);
        d
    }

    /// `x_{a+1} * d/dx_{b+1}`, the linear field corresponding to the matrix unit `e_ab`.
    pub fn linear(n: usize, a: usize, b: usize) -> Self {
        Self::monomial_field(n, Rational::one(), Monomial::var(n, a), b)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn check_same(&self, other_n: usize) -> Result<()> {
        if self.n != other_n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: other_n,
            });
        }
        Ok(())
    }

    /// `D(f) = sum_i f_i * df/dx_i`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_same(f.nvars())?;
        let mut out = Polynomial::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.partial_derivative(i)?;
            if df.is_zero() {
                continue;
            }
            out = &out + &(c * &df);
        }
        Ok(out)
    }

    /// `[self, other]`, whose `j`-th coefficient is `self(g_j) - other(f_j)`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.check_same(other.n)?;
        let mut coeffs = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let a = self.apply(&other.coeffs[j])?;
            let b = other.apply(&self.coeffs[j])?;
            coeffs.push(&a - &b);
        }
        Ok(Derivation { n: self.n, coeffs })
    }

    /// `Div D = sum_i df_i/dx_i`.
    pub fn divergence(&self) -> Polynomial {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Polynomial::zero(self.n), |acc, (i, c)| {
                &acc + &c.partial_derivative(i).expect("index < n")
            })
    }

    /// `f * D`.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<Derivation> {
        self.check_same(f.nvars())?;
        Ok(Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Derivation> {
        self.check_same(other.n)?;
        Ok(Derivation {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Derivation) -> Result<Derivation> {
        self.check_same(other.n)?;
        Ok(Derivation {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// The common graded degree (coefficient degree minus one), or `None` if
    /// `self` is zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut found: Option<u32> = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree()?;
            match found {
                Some(prev) if prev != d => return None,
                _ => found = Some(d),
            }
        }
        found.map(|d| d as i32 - 1)
    }

    /// Largest graded degree with a nonzero component.
    pub fn top_degree(&self) -> Option<i32> {
        self.coeffs
            .iter()
            .filter_map(Polynomial::total_degree)
            .max()
            .map(|d| d as i32 - 1)
    }

    /// Splits into homogeneous components keyed by graded degree `j >= -1`;
    /// coefficients of polynomial degree `j + 1` land in component `j`.
    pub fn graded_split(&self) -> BTreeMap<i32, HomogeneousDerivation> {
        let mut out: BTreeMap<i32, Derivation> = BTreeMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for (deg, part) in c.homogeneous_components() {
                let slot = out
                    .entry(deg as i32 - 1)
                    .or_insert_with(|| Derivation::zero(self.n));
                slot.coeffs[i] = part;
            }
        }
        out.into_iter()
            .map(|(d, inner)| (d, HomogeneousDerivation { inner, degree: d }))
            .collect()
    }
}

/// The Euler field `E_n = sum x_i d/dx_i`.
pub fn euler(n: usize) -> Result<Derivation> {
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    Derivation::from_coeffs((0..n).map(|i| Polynomial::var(n, i)).collect())
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            for (m, a) in c.terms().rev() {
                if m.degree() == 0 && (a.is_one() || (-a).is_one()) {
                    let sign = match (first, a.is_one()) {
                        (true, true) => "",
                        (true, false) => "-",
                        (false, true) => " + ",
                        (false, false) => " - ",
                    };
                    write!(f, "{sign}d{}", i + 1)?;
                } else {
                    write_signed_term(f, first, a, m)?;
                    write!(f, " d{}", i + 1)?;
                }
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &Derivation {
    type Output = Derivation;

    fn add(self, rhs: &Derivation) -> Derivation {
        self.try_add(rhs)
            .expect("derivation variable counts differ")
    }
}

impl Sub for &Derivation {
    type Output = Derivation;

    fn sub(self, rhs: &Derivation) -> Derivation {
        self.try_sub(rhs)
            .expect("derivation variable counts differ")
    }
}

impl Neg for &Derivation {
    type Output = Derivation;

    fn neg(self) -> Derivation {
        Derivation {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A derivation all of whose nonzero coefficients are homogeneous of
/// polynomial degree `degree + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousDerivation {
    inner: Derivation,
    degree: i32,
}

impl HomogeneousDerivation {
    /// Checks that `d` lies in `W^[degree]`. The zero derivation is accepted
    /// for every degree.
    pub fn new(d: Derivation, degree: i32) -> Result<Self> {
        if degree < -1 {
            return Err(Error::InvalidDegree { degree, min: -1 });
        }
        if !d.is_zero() {
            match d.homogeneous_degree() {
                None => return Err(Error::NotHomogeneous),
                Some(found) if found != degree => {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(HomogeneousDerivation { inner: d, degree })
    }

    pub fn zero(n: usize, degree: i32) -> Self {
        HomogeneousDerivation {
            inner: Derivation::zero(n),
            degree,
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn derivation(&self) -> &Derivation {
        &self.inner
    }

    pub fn into_derivation(self) -> Derivation {
        self.inner
    }

    pub fn nvars(&self) -> usize {
        self.inner.n
    }

    /// If `self = f * E_n`, returns the witness `f` (homogeneous of degree
    /// `self.degree()`, or zero). Returns `None` otherwise, and for degree -1
    /// unless `self` is zero.
    pub fn euler_witness(&self) -> Option<Polynomial> {
        let n = self.inner.n;
        if self.inner.is_zero() {
            return Some(Polynomial::zero(n));
        }
        if self.degree < 0 {
            return None;
        }
        let f = self.inner.coeffs[0].div_var(0)?;
        let matches = (0..n).all(|i| self.inner.coeffs[i] == &f * &Polynomial::var(n, i));
        matches.then_some(f)
    }

    pub fn is_euler_multiple(&self) -> bool {
        self.euler_witness().is_some()
    }
}

impl fmt::Display for HomogeneousDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

impl From<HomogeneousDerivation> for Derivation {
    fn from(h: HomogeneousDerivation) -> Self {
        h.inner
    }
}

/// Sum of the graded components, as returned by [`Derivation::graded_split`].
pub fn reassemble(n: usize, parts: &BTreeMap<i32, HomogeneousDerivation>) -> Derivation {
    parts
        .values()
        .fold(Derivation::zero(n), |acc, h| &acc + h.derivation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};
    use crate::testutil::{arb_derivation, arb_homogeneous, arb_poly};
    use proptest::prelude::*;

    fn mono(n: usize, c: Rational, e: &[u32], i: usize) -> Derivation {
        Derivation::monomial_field(n, c, Monomial::new(e.to_vec()), i)
    }

    fn poly(n: usize, c: Rational, e: &[u32]) -> Polynomial {
        Polynomial::term(n, c, Monomial::new(e.to_vec()))
    }

    #[test]
    fn apply_examples() {
        let e2 = euler(2).unwrap();
        let x1x2 = poly(2, int(1), &[1, 1]);
        assert_eq!(e2.apply(&x1x2).unwrap(), x1x2.scale(&int(2)));

        let d = mono(2, int(1), &[2, 0], 1);
        assert!(d.apply(&Polynomial::var(2, 0)).unwrap().is_zero());

        let d1 = Derivation::partial(2, 0);
        assert_eq!(
            d1.apply(&poly(2, int(1), &[3, 0])).unwrap(),
            poly(2, int(3), &[2, 0])
        );

        assert!(d1.apply(&Polynomial::var(3, 0)).is_err());
    }

    #[test]
    fn bracket_examples() {
        let d1 = Derivation::partial(2, 0);
        let d2 = Derivation::partial(2, 1);
        assert!(d1.bracket(&d2).unwrap().is_zero());

        let a = mono(2, int(1), &[2, 0], 1);
        let b = mono(2, int(1), &[0, 2], 0);
        let expected = &mono(2, int(2), &[2, 1], 0) - &mono(2, int(2), &[1, 2], 1);
        assert_eq!(a.bracket(&b).unwrap(), expected);

        let e2 = euler(2).unwrap();
        assert_eq!(e2.bracket(&a).unwrap(), a);

        assert!(a.bracket(&Derivation::zero(3)).is_err());
    }

    #[test]
    fn divergence_examples() {
        let x1 = Polynomial::var(2, 0);
        let x1e = euler(2).unwrap().mul_poly(&x1).unwrap();
        assert_eq!(x1e.divergence(), x1.scale(&int(3)));

        assert!(mono(2, int(1), &[2, 0], 1).divergence().is_zero());

        assert_eq!(
            euler(3).unwrap().divergence(),
            Polynomial::constant(3, int(3))
        );
    }

    #[test]
    fn euler_examples() {
        let e2 = euler(2).unwrap();
        assert_eq!(e2.to_string(), "x1 d1 + x2 d2");
        for n in 2..=4 {
            let e = euler(n).unwrap();
            assert_eq!(e.divergence(), Polynomial::constant(n, int(n as i64)));
            assert!(e.bracket(&e).unwrap().is_zero());
        }
        assert_eq!(euler(1).unwrap_err(), Error::TooFewVariables(1));
    }

    #[test]
    fn graded_split_examples() {
        let d = &Derivation::partial(2, 0) + &mono(2, int(1), &[2, 0], 0);
        let parts = d.graded_split();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(parts[&-1].derivation(), &Derivation::partial(2, 0));
        assert_eq!(parts[&1].derivation(), &mono(2, int(1), &[2, 0], 0));

        assert!(Derivation::zero(2).graded_split().is_empty());

        let parts = euler(2).unwrap().graded_split();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0].derivation(), &euler(2).unwrap());
    }

    #[test]
    fn euler_multiple_examples() {
        let e2 = euler(2).unwrap();
        let x1 = Polynomial::var(2, 0);
        let h = HomogeneousDerivation::new(e2.mul_poly(&x1).unwrap(), 1).unwrap();
        assert_eq!(h.euler_witness(), Some(x1));

        let h = HomogeneousDerivation::new(mono(2, int(1), &[2, 0], 1), 1).unwrap();
        assert_eq!(h.euler_witness(), None);

        let f = poly(3, rat(2, 3), &[1, 1, 0]);
        let h = HomogeneousDerivation::new(euler(3).unwrap().mul_poly(&f).unwrap(), 2).unwrap();
        assert_eq!(h.euler_witness(), Some(f));
    }

    #[test]
    fn homogeneous_constructor_rejects_mixed_degrees() {
        let d = &Derivation::partial(2, 0) + &mono(2, int(1), &[1, 0], 0);
        assert_eq!(
            HomogeneousDerivation::new(d, 0).unwrap_err(),
            Error::NotHomogeneous
        );
        let d = mono(2, int(1), &[1, 0], 0);
        assert_eq!(
            HomogeneousDerivation::new(d, 1).unwrap_err(),
            Error::DegreeMismatch {
                expected: 1,
                found: 0
            }
        );
    }

    #[test]
    fn display_uses_d_symbols() {
        let d = &mono(2, int(1), &[2, 0], 0) - &mono(2, rat(2, 3), &[1, 1], 1);
        assert_eq!(d.to_string(), "x1^2 d1 - 2/3*x1*x2 d2");
        let d = &(&Derivation::partial(3, 0) - &Derivation::partial(3, 1)).scale(&int(1))
            + &Derivation::partial(3, 2).scale(&int(3));
        assert_eq!(d.to_string(), "d1 - d2 + 3 d3");
        assert_eq!(Derivation::zero(2).to_string(), "0");
    }

    #[test]
    fn euler_acts_by_degree_on_basis() {
        for n in 2..=3 {
            let e = euler(n).unwrap();
            for m in -1..=5i32 {
                for mono in Monomial::all_of_degree(n, (m + 1) as u32) {
                    for i in 0..n {
                        let d = Derivation::monomial_field(n, int(1), mono.clone(), i);
                        assert_eq!(e.bracket(&d).unwrap(), d.scale(&int(m as i64)));
                    }
                }
            }
        }
    }

    #[test]
    fn euler_scales_homogeneous_polynomials() {
        let e = euler(3).unwrap();
        for m in 0..=5u32 {
            for mono in Monomial::all_of_degree(3, m) {
                let f = Polynomial::term(3, rat(7, 2), mono);
                assert_eq!(e.apply(&f).unwrap(), f.scale(&int(m as i64)));
            }
        }
    }

    proptest! {
        #[test]
        fn antisymmetry(a in arb_derivation(3, 3), b in arb_derivation(3, 3)) {
            prop_assert_eq!(a.bracket(&b).unwrap(), -&b.bracket(&a).unwrap());
        }

        #[test]
        fn jacobi(a in arb_derivation(2, 2), b in arb_derivation(2, 2), c in arb_derivation(2, 2)) {
            let sum = &(&a.bracket(&b).unwrap().bracket(&c).unwrap()
                + &b.bracket(&c).unwrap().bracket(&a).unwrap())
                + &c.bracket(&a).unwrap().bracket(&b).unwrap();
            prop_assert!(sum.is_zero());
        }

        #[test]
        fn divergence_identities(a in arb_derivation(3, 3), b in arb_derivation(3, 3), f in arb_poly(3, 2)) {
            prop_assert_eq!((&a + &b).divergence(), &a.divergence() + &b.divergence());
            prop_assert_eq!((&a - &b).divergence(), &a.divergence() - &b.divergence());
            let fa = a.mul_poly(&f).unwrap();
            prop_assert_eq!(fa.divergence(), &(&f * &a.divergence()) + &a.apply(&f).unwrap());
            let lhs = a.bracket(&b).unwrap().divergence();
            let rhs = &a.apply(&b.divergence()).unwrap() - &b.apply(&a.divergence()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn brackets_respect_grading(a in arb_homogeneous(3), b in arb_homogeneous(3)) {
            let c = a.derivation().bracket(b.derivation()).unwrap();
            if !c.is_zero() {
                prop_assert_eq!(c.homogeneous_degree(), Some(a.degree() + b.degree()));
            }
        }

        #[test]
        fn graded_split_reassembles(d in arb_derivation(3, 3)) {
            let parts = d.graded_split();
            for (deg, h) in &parts {
                prop_assert!(!h.derivation().is_zero());
                prop_assert_eq!(h.derivation().homogeneous_degree(), Some(*deg));
            }
            prop_assert_eq!(reassemble(3, &parts), d);
        }
    }
}

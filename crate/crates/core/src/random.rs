//! Seeded generators of random polynomials and derivations with small
//! rational coefficients. The caller owns the RNG, so a fixed seed gives a
//! fixed sample.

use rand::Rng;

use crate::derlie::{Derivation, HomogeneousDerivation};
use crate::error::Result;
use crate::graded::GradedBasis;
use crate::polyring::{rat, Polynomial, Rational};

/// `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Up to `max_terms` terms, each exponent at most `max_deg`.
pub fn polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let c = small_rational(rng);
            let e = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
            (c, e)
        })
        .collect();
    Polynomial::from_terms(n, terms)
}

/// Derivation whose coefficients come from [`polynomial`] with 4 terms.
pub fn derivation<R: Rng + ?Sized>(rng: &mut R, n: usize, max_deg: u32) -> Derivation {
    let coeffs = (0..n).map(|_| polynomial(rng, n, max_deg, 4)).collect();
    Derivation::from_coeffs(coeffs).expect("coefficient count is n")
}

/// Element of `W^[m]`; each basis coordinate is nonzero with probability 1/2.
pub fn homogeneous<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: i32,
) -> Result<HomogeneousDerivation> {
    let b = GradedBasis::new(n, m)?;
    let coords: Vec<Rational> = (0..b.len())
        .map(|_| {
            if rng.gen_bool(0.5) {
                small_rational(rng)
            } else {
                rat(0, 1)
            }
        })
        .collect();
    HomogeneousDerivation::new(b.derivation_of(&coords)?, m)
}

/// Element of `W^[m]` with at most `terms` nonzero basis coordinates.
pub fn sparse_homogeneous<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: i32,
    terms: usize,
) -> Result<HomogeneousDerivation> {
    let b = GradedBasis::new(n, m)?;
    let mut coords = vec![rat(0, 1); b.len()];
    for _ in 0..terms {
        coords[rng.gen_range(0..b.len())] = small_rational(rng);
    }
    HomogeneousDerivation::new(b.derivation_of(&coords)?, m)
}

//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::derlie::{Derivation, HomogeneousDerivation};
use crate::polyring::{rat, Monomial, Polynomial};

pub(crate) fn arb_poly(n: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let term = (
        -5i64..=5,
        1i64..=3,
        proptest::collection::vec(0..=max_deg, n),
    );
    proptest::collection::vec(term, 0..5).prop_map(move |ts| {
        Polynomial::from_terms(n, ts.into_iter().map(|(p, q, e)| (rat(p, q), e)))
    })
}

pub(crate) fn arb_derivation(n: usize, max_deg: u32) -> impl Strategy<Value = Derivation> {
    proptest::collection::vec(arb_poly(n, max_deg), n)
        .prop_map(|cs| Derivation::from_coeffs(cs).unwrap())
}

fn arb_homogeneous_poly(n: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    let monos = Monomial::all_of_degree(n, d);
    let count = monos.len();
    proptest::collection::vec((-4i64..=4, 1i64..=3), count).prop_map(move |cs| {
        Polynomial::from_terms(
            n,
            cs.into_iter()
                .zip(&monos)
                .map(|((p, q), m)| (rat(p, q), m.exponents().to_vec())),
        )
    })
}

/// Random element of `W^[m]` with `lo <= m <= hi`.
pub(crate) fn arb_homogeneous_in(
    n: usize,
    lo: i32,
    hi: i32,
) -> impl Strategy<Value = HomogeneousDerivation> {
    (lo..=hi).prop_flat_map(move |m| {
        proptest::collection::vec(arb_homogeneous_poly(n, (m + 1) as u32), n).prop_map(move |cs| {
            HomogeneousDerivation::new(Derivation::from_coeffs(cs).unwrap(), m).unwrap()
        })
    })
}

pub(crate) fn arb_homogeneous(n: usize) -> impl Strategy<Value = HomogeneousDerivation> {
    arb_homogeneous_in(n, -1, 2)
}

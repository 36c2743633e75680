//! Fixtures shared by the benchmarks.

use witt_core::{parse_derivation, Derivation};

/// Dense-ish fields of mixed degree, used as bracket operands.
pub fn operands(n: usize) -> (Derivation, Derivation) {
    let a = match n {
        2 => "x1^3 d1 - 2/3*x1*x2^2 d2 + x2 d1 + 5 d2",
        _ => "x1^3 d1 - 2/3*x1*x2^2 d2 + x3^2*x2 d3 + x2 d1 + 5 d3",
    };
    let b = match n {
        2 => "x1*x2 d2 + 7/2*x2^3 d1 - x1^2 d2",
        _ => "x1*x2*x3 d2 + 7/2*x3^3 d1 - x1^2 d3 + d2",
    };
    (
        parse_derivation(a, n).unwrap(),
        parse_derivation(b, n).unwrap(),
    )
}

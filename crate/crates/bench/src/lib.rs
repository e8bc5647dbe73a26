//! Fixed inputs shared by the benchmarks in `benches/`.

use oreforge_core::abelian::IntMatrix;
use oreforge_core::builtins;
use oreforge_core::tower::{Element, Tower};

pub fn a2() -> Tower {
    builtins::builtin("A2").expect("builtin").tower
}

/// A pair of dense-ish operators in `A_2`.
pub fn a2_pair(t: &Tower) -> (Element, Element) {
    let p = t.parse("x1^2*d1^2 + 3*x2*d1*d2 - 1/2*x1*x2*d2^3 + d1 + 7").expect("parses");
    let q = t.parse("d1^3*d2 - 2*x1^3*d2 + 5/3*x2^2*d1 + x1*x2").expect("parses");
    (p, q)
}

pub fn matrix4() -> IntMatrix {
    IntMatrix::from_i64(&[&[2, 4, 4, -6], &[-6, 6, 12, 10], &[10, -4, -16, 8], &[3, 9, -1, 5]])
}

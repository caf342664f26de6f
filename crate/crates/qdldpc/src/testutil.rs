//! Shared fixtures for unit tests.

use crate::codes::{build_camel_pair, AffineRowSpec, CssCodePair};
use crate::gf2e::make_field;

/// The worked GF(8) construction used across the test suite: w = 3,
/// π(x) = x³ + x + 1, affine pairs (α,1),(α²,α²),(α⁴,α⁴) for X and
/// (1,α),(α³,α⁶),(α⁶,1) for Z, giving a [[65,27]] pair.
pub(crate) fn example_pair() -> CssCodePair {
    let f = make_field(3).unwrap();
    let el = |label: u32| f.element(label).unwrap();
    let rows_x = vec![
        AffineRowSpec::new(el(2), el(1)),
        AffineRowSpec::new(el(4), el(4)),
        AffineRowSpec::new(el(6), el(6)),
    ];
    let rows_z = vec![
        AffineRowSpec::new(el(1), el(2)),
        AffineRowSpec::new(el(3), el(5)),
        AffineRowSpec::new(el(5), el(1)),
    ];
    build_camel_pair(&f, &rows_x, &rows_z).unwrap()
}

/// ψ-labels of the printed example exponent matrices.
pub(crate) const EXAMPLE_PX: [[u32; 8]; 3] =
    [[1, 3, 5, 7, 2, 0, 6, 4], [4, 0, 7, 3, 2, 6, 1, 5], [6, 0, 1, 7, 3, 5, 4, 2]];
pub(crate) const EXAMPLE_PZ: [[u32; 8]; 3] =
    [[2, 3, 0, 1, 6, 7, 4, 5], [5, 6, 3, 0, 2, 1, 4, 7], [1, 4, 0, 5, 3, 6, 2, 7]];

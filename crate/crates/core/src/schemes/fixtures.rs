//! Hand-checked schemes that take priority over the general constructors.

use super::{gate, tx, BuildError, Built, SchemeRecipe};
use crate::instance::Instance;

/// A fixed scheme for one instance, with 1-based supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub m: usize,
    pub s: usize,
    pub supports: &'static [&'static [usize]],
}

/// Worked examples whose published length differs from what the general
/// constructors would produce, and instances where the composition breaks down.
pub const REFERENCE_FIXTURES: &[Fixture] = &[
    // Four transmissions; the 4p-2 special layout would use three.
    Fixture { m: 26, s: 19, supports: &[&[5], &[2, 3, 4, 6, 11, 22], &[12, 13, 14, 15], &[18, 21, 24]] },
    // Five transmissions; the disjoint family for r = 6 would use three.
    Fixture {
        m: 26,
        s: 16,
        supports: &[
            &[1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 13, 14, 15],
            &[3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17],
            &[20, 24],
            &[8, 14, 15, 16, 17, 18, 19],
            &[1, 2, 3, 4, 10, 25, 26],
        ],
    },
    // One round plus scheme 3 and scheme 4 leaks here; found by local search.
    Fixture { m: 13, s: 5, supports: &[&[1, 2, 12], &[8, 9, 10], &[10, 11, 13], &[3, 4], &[5, 6, 8]] },
];

pub(crate) fn gate_fixture(inst: &Instance, fx: &Fixture, name: &str) -> Result<Built, BuildError> {
    let txs = fx.supports.iter().map(|sup| tx(inst, sup.iter().map(|&j| j as i64))).collect();
    let recipe = SchemeRecipe::new(name)
        .param("m", fx.m as i64)
        .param("s", fx.s as i64)
        .expect(fx.supports.len());
    gate(inst, txs, recipe)
}

/// The reference scheme for `inst`, if there is one.
pub fn reference_fixture(inst: &Instance) -> Option<Result<Built, BuildError>> {
    REFERENCE_FIXTURES
        .iter()
        .find(|f| f.m == inst.m() && f.s == inst.s())
        .map(|f| gate_fixture(inst, f, "reference_fixture"))
}

//! Constructions for `3s/2 < m < 2s`, i.e. `m = 2p + r` with `1 <= r <= p - 1`.
//!
//! The general families use pairwise disjoint supports, like the sliding
//! constructions: each complement window of `p` must meet exactly one
//! transmission in a single message.

use super::fixtures::{gate_fixture, Fixture};
use super::{ensure_regime, gate, tx, BuildError, Built, SchemeRecipe};
use crate::instance::{Classification, Instance};

/// Small odd-`m` instances and `(15, 8)`.
///
/// `(9, 5)` is kept as printed: it leaks, and no valid decentralized scheme
/// exists for that instance, so [`wide_gap_special`] reports the failure.
const SPECIAL: &[Fixture] = &[
    Fixture { m: 15, s: 8, supports: &[&[1, 2, 3, 4, 6, 7], &[3, 4, 5, 6, 7, 8, 9], &[5, 6, 7, 9, 10, 11], &[7, 8, 9, 10, 11, 12, 13], &[10, 13, 14, 15], &[1, 3, 14, 15]] },
    Fixture { m: 9, s: 5, supports: &[&[1, 2, 3, 4], &[3, 4, 5, 6], &[5, 7, 8], &[1, 8, 9]] },
    Fixture { m: 11, s: 7, supports: &[&[2, 4, 6], &[5, 6, 7, 9], &[1, 7, 8, 11], &[2, 3, 10, 11]] },
    Fixture { m: 11, s: 6, supports: &[&[3, 4, 5, 6], &[9, 10, 11], &[5, 7, 8, 9], &[2, 4, 11]] },
    Fixture { m: 13, s: 8, supports: &[&[2, 4], &[5, 7, 10], &[9, 12, 13]] },
    Fixture { m: 13, s: 7, supports: &[&[1, 2, 3, 13], &[1, 9, 12], &[3, 5, 6, 7], &[7, 8, 10]] },
    Fixture { m: 15, s: 9, supports: &[&[4, 15], &[5, 6, 9], &[10, 12, 13, 14]] },
    Fixture { m: 17, s: 11, supports: &[&[4, 5, 16], &[6, 10], &[11, 12, 15, 17]] },
];

/// The fixed scheme for `(15, 8)` and the odd-`m` instances with `p` in `4..=6`.
pub fn wide_gap_special(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::WideGap])?;
    let fx = SPECIAL
        .iter()
        .find(|f| f.m == inst.m() && f.s == inst.s())
        .ok_or_else(|| BuildError::BadParameters(format!("no fixed scheme for {inst}")))?;
    gate_fixture(inst, fx, "wide_gap_special")
}

pub(crate) fn has_special(inst: &Instance) -> bool {
    SPECIAL.iter().any(|f| f.m == inst.m() && f.s == inst.s())
}

/// Three or four disjoint transmissions, chosen by `r = m - 2p`.
pub fn wide_gap_general(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::WideGap])?;
    let p = inst.p() as i64;
    let m = inst.m() as i64;
    let r = m - 2 * p;
    let (family, supports): (&str, Vec<Vec<i64>>) = match r {
        1 if p >= 7 => (
            "r=1",
            vec![
                vec![p - 5, m],
                vec![p - 4, p - 2, p + 1],
                vec![p - 1, p, 2 * p - 4, 2 * p - 3],
                vec![2 * p - 5, 2 * p - 2, 2 * p - 1, 2 * p],
            ],
        ),
        2 if p >= 5 => (
            "r=2",
            vec![vec![p - 2, m], vec![p - 1, p, p + 2], vec![2 * p - 2, 2 * p, 2 * p + 1]],
        ),
        3 if p >= 6 => (
            "r=3",
            vec![vec![p - 2, m], vec![p - 1, p, p + 3], vec![2 * p - 2, 2 * p, 2 * p + 1, 2 * p + 2]],
        ),
        r if r == p - 1 => (
            "r=p-1",
            vec![vec![p - 2, p - 1, m - 1], vec![p, 2 * p - 2], vec![2 * p - 1, 2 * p, m - 2, m]],
        ),
        r if r >= 4 && r <= p - 2 => (
            "4<=r<=p-2",
            vec![
                vec![p - 2, p - 1, p + r - 3, p + r - 2],
                vec![p, m - 2],
                vec![2 * p, m - 3, m - 1, m],
            ],
        ),
        _ => {
            return Err(BuildError::BadParameters(format!(
                "no general family for {inst} (p={p}, r={r})"
            )))
        }
    };
    let len = supports.len();
    let txs = supports.into_iter().map(|sup| tx(inst, sup)).collect();
    let recipe = SchemeRecipe::new("wide_gap_general")
        .param("p", p)
        .param("r", r)
        .note("family", family)
        .expect(len);
    gate(inst, txs, recipe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::classify;

    fn inst(m: usize, s: usize) -> Instance {
        Instance::new(m, s).unwrap()
    }

    #[test]
    fn fixtures_verify_except_nine_five() {
        for fx in SPECIAL {
            let x = inst(fx.m, fx.s);
            assert_eq!(classify(&x), Classification::WideGap);
            let got = wide_gap_special(&x);
            if (fx.m, fx.s) == (9, 5) {
                assert!(matches!(got, Err(BuildError::VerifyFailed { .. })));
            } else {
                assert_eq!(got.unwrap().scheme.len(), fx.supports.len());
            }
        }
        assert_eq!(wide_gap_special(&inst(15, 8)).unwrap().scheme.len(), 6);
        assert!(wide_gap_special(&inst(26, 16)).is_err());
    }

    #[test]
    fn general_families_cover_large_p() {
        for p in 7..=24 {
            for r in 1..p {
                let x = inst(2 * p + r, p + r);
                let b = wide_gap_general(&x).unwrap_or_else(|e| panic!("{e}"));
                assert!(b.scheme.len() <= 4);
            }
        }
    }

    #[test]
    fn general_gaps_are_fixtures() {
        for p in 4..=6usize {
            for r in 1..p {
                let x = inst(2 * p + r, p + r);
                if wide_gap_general(&x).is_err() {
                    assert!(has_special(&x) || x.m() % 2 == 0, "{x}");
                }
            }
        }
    }
}

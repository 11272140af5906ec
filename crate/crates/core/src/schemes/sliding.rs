//! Constructions for `s < m <= 3s/2`.
//!
//! With `p = m - s`, every user's unknown messages form a window of `p`
//! consecutive indices. All transmissions here have pairwise disjoint
//! supports, so a user learns `w_j` exactly when some transmission meets its
//! window in `{j}` alone. The constructions tile the circle with blocks so
//! that every window of `p` sees exactly one such transmission.

use super::{ensure_regime, gate, span, tx, BuildError, Built, SchemeRecipe};
use crate::instance::{Classification, Instance};
use crate::verifier::Transmission;

fn p_of(inst: &Instance) -> i64 {
    inst.p() as i64
}

/// Appends one block of length `2p - 2` starting after `b`: a run of `p - 1` and a pair.
fn long_block(run: &mut Vec<i64>, pair: &mut Vec<i64>, b: i64, p: i64) {
    run.extend(span(b + 1, b + p - 1));
    pair.extend([b + p, b + 2 * p - 2]);
}

/// Appends one block of length `p` starting after `b`: a run of `p - 1` and a single.
fn short_block(run: &mut Vec<i64>, single: &mut Vec<i64>, b: i64, p: i64) {
    run.extend(span(b + 1, b + p - 1));
    single.push(b + p);
}

/// `k1` long blocks followed by `k2` short blocks, for `m = k1(2p-2) + k2 p`, `k1 >= 2`.
pub fn sliding_basic(inst: &Instance, k1: usize, k2: usize) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::NarrowGap])?;
    let p = p_of(inst);
    let (k1i, k2i) = (k1 as i64, k2 as i64);
    if k1 < 2 || k1i * (2 * p - 2) + k2i * p != inst.m() as i64 {
        return Err(BuildError::BadParameters(format!(
            "m={} is not {k1}(2p-2) + {k2}p with k1 >= 2",
            inst.m()
        )));
    }
    let mut t: [Vec<i64>; 4] = Default::default();
    for j in 0..k1i {
        let b = j * (2 * p - 2);
        let (x, y) = if j == 1 { (2, 3) } else { (0, 1) };
        let (lo, hi) = t.split_at_mut(y);
        long_block(&mut lo[x], &mut hi[0], b, p);
    }
    for j in 0..k2i {
        let b = k1i * (2 * p - 2) + j * p;
        let (lo, hi) = t.split_at_mut(1);
        short_block(&mut lo[0], &mut hi[0], b, p);
    }
    let recipe = SchemeRecipe::new("sliding_basic")
        .param("k1", k1i)
        .param("k2", k2i)
        .expect(4);
    gate(inst, to_txs(inst, t), recipe)
}

/// `m = k1(2p-2) + k2 p + q` with `k1 >= 1` and `p + 2 <= q <= 2p - 2`.
///
/// The first long block is shortened to absorb the remainder `q`; its
/// complement is closed by a run and a pair placed at the very end.
pub fn sliding_variant(inst: &Instance, k1: usize, k2: usize, q: usize) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::NarrowGap])?;
    let p = p_of(inst);
    let m = inst.m() as i64;
    let (k1i, k2i, qi) = (k1 as i64, k2 as i64, q as i64);
    if k1 < 1 || !(p + 2..=2 * p - 2).contains(&qi) || k1i * (2 * p - 2) + k2i * p + qi != m {
        return Err(BuildError::BadParameters(format!(
            "m={m} is not {k1}(2p-2) + {k2}p + {q} with k1 >= 1, p+2 <= q <= 2p-2"
        )));
    }
    let mut t1: Vec<i64> = std::iter::once(1).chain(span(2 * p - qi, p - 1)).collect();
    let mut t2 = vec![p, 2 * p - 2];
    for j in 1..k1i {
        long_block(&mut t1, &mut t2, j * (2 * p - 2), p);
    }
    let (mut t3, mut t4) = (Vec::new(), Vec::new());
    for j in 0..k2i {
        short_block(&mut t3, &mut t4, k1i * (2 * p - 2) + j * p, p);
    }
    t3.extend(span(m - qi + 1, m - p + 1));
    t4.extend([m - qi + p, m]);
    let recipe = SchemeRecipe::new("sliding_variant")
        .param("k1", k1i)
        .param("k2", k2i)
        .param("q", qi)
        .expect(4);
    gate(inst, to_txs(inst, [t1, t2, t3, t4]), recipe)
}

fn to_txs<const N: usize>(inst: &Instance, t: [Vec<i64>; N]) -> Vec<Transmission> {
    t.into_iter().map(|v| tx(inst, v)).collect()
}

/// The five remainders not reachable by the block decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    FiveP3,
    SixP3,
    FourP3,
    FourP2,
    FourP1,
}

impl SpecialCase {
    pub fn of(inst: &Instance) -> Option<Self> {
        let (m, p) = (inst.m(), inst.p());
        match m {
            m if m == 5 * p - 3 => Some(SpecialCase::FiveP3),
            m if m == 6 * p - 3 => Some(SpecialCase::SixP3),
            m if m == 4 * p - 3 => Some(SpecialCase::FourP3),
            m if m == 4 * p - 2 => Some(SpecialCase::FourP2),
            m if m == 4 * p - 1 => Some(SpecialCase::FourP1),
            _ => None,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            SpecialCase::FiveP3 => "5p-3",
            SpecialCase::SixP3 => "6p-3",
            SpecialCase::FourP3 => "4p-3",
            SpecialCase::FourP2 => "4p-2",
            SpecialCase::FourP1 => "4p-1",
        }
    }
}

/// Three-transmission schemes for `m` in `{5p-3, 6p-3, 4p-3, 4p-2, 4p-1}`.
///
/// For `p = 4` the block layouts do not apply; those instances are handled by [`narrow_gap_p4`].
pub fn sliding_special(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::NarrowGap])?;
    let p = p_of(inst);
    if p == 4 {
        return narrow_gap_p4(inst);
    }
    let case = SpecialCase::of(inst).ok_or_else(|| {
        BuildError::BadParameters(format!("m={} is not one of the five special remainders", inst.m()))
    })?;
    let head = || span(2, p - 2).chain([p, 2 * p - 2]);
    let t: [Vec<i64>; 3] = match case {
        SpecialCase::FiveP3 => [
            head().chain([4 * p]).collect(),
            span(2 * p - 1, 2 * p + 1)
                .chain([3 * p + 1, 4 * p - 2, 4 * p - 1, 5 * p - 4])
                .collect(),
            vec![p - 1, 3 * p - 2, 3 * p],
        ],
        SpecialCase::SixP3 => [
            head().chain([3 * p - 2, 5 * p]).collect(),
            span(2 * p - 1, 2 * p + 1)
                .chain(span(3 * p - 1, 3 * p + 1))
                .chain([4 * p + 1, 5 * p - 2, 5 * p - 1, 6 * p - 4])
                .collect(),
            vec![p - 1, 4 * p - 2, 4 * p],
        ],
        SpecialCase::FourP3 => [
            vec![p - 1, 3 * p - 2, 3 * p - 1, 4 * p - 4],
            head().chain([3 * p]).collect(),
            vec![2 * p - 1, 2 * p],
        ],
        SpecialCase::FourP2 => [
            vec![p - 1, 3 * p - 2, 3 * p, 4 * p - 3],
            head().chain([3 * p + 1]).collect(),
            span(2 * p - 1, 2 * p + 1).collect(),
        ],
        SpecialCase::FourP1 => [
            vec![p - 1, 3 * p - 2, 3 * p + 1, 4 * p - 2],
            head().chain([3 * p + 2]).collect(),
            span(2 * p - 1, 2 * p + 2).collect(),
        ],
    };
    let recipe = SchemeRecipe::new("sliding_special")
        .note("case", case.label())
        .expect(3);
    gate(inst, to_txs(inst, t), recipe)
}

/// Transmissions read off a label string: position `j` (1-based) belongs to
/// transmission `c` when the `j`-th character is the digit `c`; `0` marks unused messages.
pub(crate) fn from_labels(inst: &Instance, labels: &str) -> Vec<Transmission> {
    assert_eq!(labels.len(), inst.m(), "label string length");
    let top = labels.bytes().map(|b| b - b'0').max().unwrap_or(0);
    (1..=top)
        .map(|c| {
            tx(
                inst,
                labels
                    .bytes()
                    .enumerate()
                    .filter(|(_, b)| b - b'0' == c)
                    .map(|(j, _)| j as i64 + 1),
            )
        })
        .collect()
}

/// `p = 4`: three transmissions for odd `m >= 13`, and a fixed scheme for `m = 14`.
pub fn narrow_gap_p4(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::NarrowGap])?;
    let m = inst.m();
    if inst.p() != 4 {
        return Err(BuildError::BadParameters(format!("p={} but this layout needs p=4", inst.p())));
    }
    let k = m / 4;
    let labels = match m % 4 {
        1 if m >= 13 => format!("{}0113{}", "0112".repeat(k - 2), "03233"),
        3 if m >= 15 => format!("{}0233313", "0112".repeat(k - 1)),
        2 if m == 14 => "01120122033133".to_string(),
        _ => {
            return Err(BuildError::BadParameters(format!(
                "no p=4 layout for m={m}; even m is covered by the block decompositions"
            )))
        }
    };
    let recipe = SchemeRecipe::new("narrow_gap_p4").param("k", k as i64).expect(3);
    gate(inst, from_labels(inst, &labels), recipe)
}

/// Block decomposition of `m` for the basic layout, largest `k1` first.
pub fn basic_decomposition(m: usize, p: usize) -> Option<(usize, usize)> {
    (2..=m / (2 * p - 2))
        .rev()
        .find(|k1| (m - k1 * (2 * p - 2)) % p == 0)
        .map(|k1| (k1, (m - k1 * (2 * p - 2)) / p))
}

/// Decomposition `(k1, k2, q)` for the variant layout, largest `k1` then smallest `k2` first.
pub fn variant_decomposition(m: usize, p: usize) -> Option<(usize, usize, usize)> {
    for k1 in (1..=m / (2 * p - 2)).rev() {
        let rest = m - k1 * (2 * p - 2);
        for k2 in 0..=rest / p {
            let q = rest - k2 * p;
            if (p + 2..=2 * p - 2).contains(&q) {
                return Some((k1, k2, q));
            }
        }
    }
    None
}

/// Dispatcher for the regime: basic, then variant, then the special remainders.
pub fn narrow_gap(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::NarrowGap])?;
    let (m, p) = (inst.m(), inst.p());
    if p == 4 && m % 2 == 1 {
        return narrow_gap_p4(inst);
    }
    if let Some((k1, k2)) = basic_decomposition(m, p) {
        return sliding_basic(inst, k1, k2);
    }
    if let Some((k1, k2, q)) = variant_decomposition(m, p) {
        return sliding_variant(inst, k1, k2, q);
    }
    sliding_special(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(m: usize, s: usize) -> Instance {
        Instance::new(m, s).unwrap()
    }

    #[test]
    fn basic_reproduces_worked_example() {
        let b = sliding_basic(&inst(26, 20), 2, 1).unwrap();
        assert_eq!(
            b.scheme.supports(),
            vec![
                vec![1, 2, 3, 4, 5, 21, 22, 23, 24, 25],
                vec![6, 10, 26],
                vec![11, 12, 13, 14, 15],
                vec![16, 20],
            ]
        );
    }

    #[test]
    fn basic_smallest_decomposition() {
        for p in 5..=9 {
            let m = 5 * p - 4;
            let b = sliding_basic(&inst(m, m - p), 2, 1).unwrap();
            assert_eq!(b.scheme.len(), 4);
        }
        assert!(sliding_basic(&inst(26, 20), 1, 2).is_err());
        assert!(sliding_basic(&inst(26, 20), 2, 0).is_err());
    }

    #[test]
    fn variant_reproduces_corrected_example() {
        let b = sliding_variant(&inst(26, 18), 1, 0, 12).unwrap();
        assert_eq!(
            b.scheme.supports(),
            vec![vec![1, 4, 5, 6, 7], vec![8, 14], vec![15, 16, 17, 18, 19], vec![22, 26]]
        );
    }

    #[test]
    fn specials_have_three_transmissions() {
        for p in 5..=12 {
            for m in [5 * p - 3, 6 * p - 3, 4 * p - 3, 4 * p - 2, 4 * p - 1] {
                let b = sliding_special(&inst(m, m - p)).unwrap_or_else(|e| panic!("{e}"));
                assert_eq!(b.scheme.len(), 3);
            }
        }
        assert!(sliding_special(&inst(26, 20)).is_err());
    }

    #[test]
    fn p4_layouts() {
        for m in (13..=61).step_by(2) {
            assert_eq!(narrow_gap_p4(&inst(m, m - 4)).unwrap().scheme.len(), 3, "m={m}");
        }
        assert_eq!(narrow_gap_p4(&inst(14, 10)).unwrap().scheme.len(), 3);
        assert!(narrow_gap_p4(&inst(18, 14)).is_err());
    }

    #[test]
    fn decompositions() {
        assert_eq!(basic_decomposition(26, 6), Some((2, 1)));
        assert_eq!(basic_decomposition(26, 8), None);
        assert_eq!(variant_decomposition(26, 8), Some((1, 0, 12)));
        assert_eq!(basic_decomposition(26, 7), None);
        assert_eq!(variant_decomposition(26, 7), None);
    }
}

//! Divisible instances, the `s in {3, 4}` and `p = 3` rows, and the `m/2` chains for even `m`.

use super::large_m::compose;
use super::search::{search_fallback, DEFAULT_SEED};
use super::sliding::from_labels;
use super::{ensure_regime, gate, span, tx, BuildError, Built, SchemeRecipe};
use crate::bounds::large_m_length;
use crate::instance::{classify, Classification, Instance};
use crate::verifier::Transmission;

/// Single messages `p, 2p, ..., m`: every complement window holds exactly one.
pub fn divisible_clear(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::Divisible])?;
    let (m, p) = (inst.m(), inst.p() as i64);
    let count = m / inst.p();
    let txs = (1..=count as i64).map(|k| tx(inst, [k * p])).collect();
    let recipe = SchemeRecipe::new("divisible_clear")
        .param("p", p)
        .note("rate_gap", "m/p sent where m/s is the fractional optimum")
        .expect(count);
    gate(inst, txs, recipe)
}

fn pair_chain(inst: &Instance) -> Vec<Transmission> {
    (1..=inst.m() as i64 / 2).map(|j| tx(inst, [2 * j - 1, 2 * j])).collect()
}

fn triple_chain(inst: &Instance) -> Vec<Transmission> {
    (1..=inst.m() as i64 / 2)
        .map(|j| tx(inst, [2 * j - 1, 2 * j, 2 * j + 1]))
        .collect()
}

/// `m/2` transmissions for even `m`: the pair chain, then the overlapping
/// triple chain, then a seeded search, each accepted only if it verifies.
pub fn even_m_fallback(inst: &Instance) -> Result<Built, BuildError> {
    even_m_with_seed(inst, DEFAULT_SEED)
}

/// [`even_m_fallback`] with an explicit seed for the final search.
pub fn even_m_with_seed(inst: &Instance, seed: u64) -> Result<Built, BuildError> {
    let m = inst.m();
    if m % 2 == 1 {
        return Err(BuildError::BadParameters(format!("m={m} is odd")));
    }
    if let Classification::Infeasible(reason) = classify(inst) {
        return Err(BuildError::Infeasible { inst: *inst, reason });
    }
    let half = m / 2;
    let pairs = SchemeRecipe::new("even_m_fallback").note("chain", "pairs").expect(half);
    gate(inst, pair_chain(inst), pairs)
        .or_else(|_| {
            let triples = SchemeRecipe::new("even_m_fallback").note("chain", "triples").expect(half);
            gate(inst, triple_chain(inst), triples)
        })
        .or_else(|_| search_fallback(inst, half, seed))
}

/// `s = 3`: the pair chain. `s = 4`: scheme-1 rounds closed by scheme 4.
pub fn edge_small_s(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::EdgeSmallS])?;
    let (m, s) = (inst.m(), inst.s());
    if s == 3 {
        let recipe = SchemeRecipe::new("edge_small_s").note("chain", "pairs").expect(m / 2);
        return gate(inst, pair_chain(inst), recipe);
    }
    let built = compose(inst, "edge_small_s")?;
    debug_assert_eq!(built.scheme.len(), large_m_length(m, s));
    Ok(built)
}

/// Three disjoint transmissions for `p = 3`, `m >= 8`: a periodic `112` prefix and a fixed tail.
fn p3_labels(m: usize) -> String {
    match m % 3 {
        1 => format!("{}1133233", "112".repeat((m - 7) / 3)),
        _ => format!("{}11212233", "112".repeat((m - 8) / 3)),
    }
}

/// `p = 3`, even `m`: three overlapping runs, which only verify for `m <= 10`,
/// else the disjoint label layout. Odd `m >= 11`: four transmissions.
pub fn edge_large_s(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::EdgeLargeS])?;
    let (m, s) = (inst.m() as i64, inst.s() as i64);
    if m % 2 == 0 {
        let runs = vec![
            tx(inst, span(1, s - 1)),
            tx(inst, span(3, s + 1)),
            tx(inst, span(5, m)),
        ];
        let recipe = SchemeRecipe::new("edge_large_s").note("parity", "even");
        return gate(inst, runs, recipe.clone().note("layout", "runs").expect(3)).or_else(|_| {
            gate(inst, from_labels(inst, &p3_labels(inst.m())), recipe.note("layout", "labels").expect(3))
        });
    }
    let txs = vec![
        tx(inst, [1].into_iter().chain((1..=(m - 7) / 2).map(|i| 2 * i)).chain([m - 6])),
        tx(inst, (1..=(m - 9) / 2).map(|i| 2 * i + 1).chain([m - 5, m - 4])),
        tx(inst, [m - 3, m - 2]),
        tx(inst, [m - 1, m]),
    ];
    gate(inst, txs, SchemeRecipe::new("edge_large_s").note("parity", "odd").expect(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(m: usize, s: usize) -> Instance {
        Instance::new(m, s).unwrap()
    }

    #[test]
    fn divisible_examples() {
        let b = divisible_clear(&inst(9, 6)).unwrap();
        assert_eq!(b.scheme.supports(), vec![vec![3], vec![6], vec![9]]);
        assert_eq!(divisible_clear(&inst(8, 4)).unwrap().scheme.len(), 2);
        assert_eq!(divisible_clear(&inst(6, 3)).unwrap().scheme.len(), 2);
        assert!(divisible_clear(&inst(26, 6)).is_err());
    }

    #[test]
    fn chains() {
        for (m, s, chain) in [(12, 7, "pairs"), (14, 9, "pairs"), (10, 6, "triples"), (18, 10, "triples"), (16, 10, "triples")] {
            let b = even_m_fallback(&inst(m, s)).unwrap();
            assert_eq!(b.scheme.len(), m / 2);
            assert_eq!(b.recipe.params["chain"].to_string(), chain, "({m},{s})");
        }
        assert!(even_m_fallback(&inst(15, 8)).is_err());
    }

    #[test]
    fn small_s_rows() {
        assert!(edge_small_s(&inst(6, 3)).unwrap_err().to_string().contains("divisible"));
        assert_eq!(edge_small_s(&inst(10, 3)).unwrap().scheme.len(), 5);
        assert_eq!(edge_small_s(&inst(12, 4)).unwrap().scheme.len(), 5);
        assert_eq!(edge_small_s(&inst(18, 4)).unwrap().scheme.len(), 7);
    }

    #[test]
    fn large_s_rows() {
        let b = edge_large_s(&inst(10, 7)).unwrap();
        assert_eq!(
            b.scheme.supports(),
            vec![(1..=6).collect::<Vec<_>>(), (3..=8).collect(), (5..=10).collect()]
        );
        for m in (14..=60).step_by(2).filter(|m| m % 3 != 0) {
            let b = edge_large_s(&inst(m, m - 3)).unwrap();
            assert_eq!(b.recipe.params["layout"].to_string(), "labels");
        }
        assert_eq!(edge_large_s(&inst(11, 8)).unwrap().scheme.len(), 4);
        assert_eq!(edge_large_s(&inst(13, 10)).unwrap().scheme.len(), 4);
    }
}

//! Seeded randomized local search over windowed supports.
//!
//! Used only where no explicit construction applies. Results worth keeping
//! are pinned as fixtures so that [`super::build`] stays deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gate, BuildError, Built, SchemeRecipe};
use crate::bounds::converse_bound;
use crate::instance::Instance;
use crate::verifier::{mask, Transmission};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Work limits: restarts per target length and moves per restart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub restarts: usize,
    pub moves: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            restarts: 24,
            moves: 4000,
        }
    }
}

/// Unsatisfied users plus twice the leaking users, plus a penalty per dependent row.
fn cost(m: usize, s: usize, rows: &[u64]) -> usize {
    let (sat, leak) = mask::score(m, s, rows);
    let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
    for &r in rows {
        let v = basis.iter().fold(r, |v, &b| if v & (b & b.wrapping_neg()) != 0 { v ^ b } else { v });
        if v != 0 {
            for b in basis.iter_mut() {
                if *b & (v & v.wrapping_neg()) != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    (m - sat - leak) + 2 * leak + 3 * (rows.len() - basis.len())
}

fn random_support(rng: &mut ChaCha8Rng, m: usize, s: usize) -> u64 {
    let start = rng.gen_range(0..m);
    let mut v = 1u64 << start;
    for k in 1..s {
        if rng.gen_bool(0.35) {
            v |= 1 << ((start + k) % m);
        }
    }
    v
}

fn to_transmissions(inst: &Instance, rows: &[u64]) -> Vec<Transmission> {
    rows.iter()
        .map(|&r| {
            Transmission::new((0..inst.m()).filter(|j| r >> j & 1 == 1).map(|j| j + 1))
                .expect("non-empty row")
        })
        .collect()
}

/// Looks for a valid scheme with at most `max_len` transmissions, shortest target first.
pub fn search_fallback(inst: &Instance, max_len: usize, seed: u64) -> Result<Built, BuildError> {
    search_with_budget(inst, max_len, seed, SearchBudget::default())
}

pub fn search_with_budget(
    inst: &Instance,
    max_len: usize,
    seed: u64,
    budget: SearchBudget,
) -> Result<Built, BuildError> {
    let (m, s) = (inst.m(), inst.s());
    let exhausted = || BuildError::SearchExhausted { inst: *inst, max_len };
    let lower = converse_bound(inst).ok_or_else(exhausted)?.ceil().max(1);
    if m > 64 {
        return Err(BuildError::BadParameters(format!("search supports m <= 64, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for len in lower..=max_len {
        for restart in 0..budget.restarts {
            let mut rows: Vec<u64> = (0..len).map(|_| random_support(&mut rng, m, s)).collect();
            let mut c = cost(m, s, &rows);
            for _ in 0..budget.moves {
                if c == 0 {
                    break;
                }
                let k = rng.gen_range(0..len);
                let old = rows[k];
                rows[k] = if rng.gen_ratio(1, 3) {
                    random_support(&mut rng, m, s)
                } else {
                    old ^ 1 << rng.gen_range(0..m)
                };
                if !mask::windowed(m, s, rows[k]) {
                    rows[k] = old;
                    continue;
                }
                let next = cost(m, s, &rows);
                if next <= c || rng.gen_ratio(1, 50) {
                    c = next;
                } else {
                    rows[k] = old;
                }
            }
            if c == 0 {
                let recipe = SchemeRecipe::new("search_fallback")
                    .param("seed", seed as i64)
                    .param("restart", restart as i64)
                    .expect(len);
                return gate(inst, to_transmissions(inst, &rows), recipe);
            }
        }
    }
    Err(exhausted())
}

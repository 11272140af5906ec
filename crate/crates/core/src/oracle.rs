//! Exhaustive search for the shortest scalar binary linear scheme, for small `m`.
//!
//! Validity depends only on the row space of the generator, and any scheme
//! can be trimmed to an independent set of windowed rows with the same span.
//! The search therefore walks the row spaces that have a windowed generating
//! set, one dimension at a time. A space in which some user decodes two
//! messages is dropped together with everything above it, since enlarging
//! the space only enlarges each user's projected row space. An empty level
//! is a proof that no valid scheme exists at any length.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::instance::{classify, Classification, Instance};
use crate::verifier::{mask, Scheme, Transmission};

/// Largest `m` the search accepts.
pub const MAX_M: usize = 10;

/// Printed above every certification report.
pub const REPORT_HEADER: &str =
    "scalar binary linear minimum; nonlinear and sub-packetized codes are not covered";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle supports m <= {limit}, got m={m}")]
    TooLarge { m: usize, limit: usize },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleStatus {
    Feasible { min_length: usize, witness: Scheme },
    Infeasible,
    Unknown { searched_up_to_dim: usize },
}

impl OracleStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            OracleStatus::Feasible { .. } => "feasible",
            OracleStatus::Infeasible => "infeasible",
            OracleStatus::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    /// Windowed vectors available as generators.
    pub windowed_vectors: usize,
    /// Distinct row spaces tested, over all dimensions.
    pub spaces_examined: u64,
    /// Non-leaking spaces kept at each dimension, starting at 1.
    pub kept_per_dim: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub instance: Instance,
    pub status: OracleStatus,
    pub stats: OracleStats,
}

type Basis = Vec<u64>;

fn highest(v: u64) -> u32 {
    63 - v.leading_zeros()
}

/// Adds `v` to a fully reduced basis sorted by descending pivot; `None` if already spanned.
fn extend(basis: &[u64], v: u64) -> Option<Basis> {
    let v = basis.iter().fold(v, |v, &b| if v >> highest(b) & 1 == 1 { v ^ b } else { v });
    if v == 0 {
        return None;
    }
    let h = highest(v);
    let mut out: Basis = basis.iter().map(|&b| if b >> h & 1 == 1 { b ^ v } else { b }).collect();
    out.push(v);
    out.sort_unstable_by(|a, b| b.cmp(a));
    Some(out)
}

fn in_span(basis: &[u64], v: u64) -> bool {
    basis.iter().fold(v, |v, &b| if v >> highest(b) & 1 == 1 { v ^ b } else { v }) == 0
}

/// A windowed generating set for the space spanned by `basis`, smallest vectors first.
fn windowed_generators(basis: &[u64], windowed: &[u64]) -> Vec<u64> {
    let mut picked: Basis = Vec::new();
    let mut gens = Vec::new();
    for &w in windowed {
        if gens.len() == basis.len() {
            break;
        }
        if in_span(basis, w) {
            if let Some(next) = extend(&picked, w) {
                picked = next;
                gens.push(w);
            }
        }
    }
    gens
}

fn witness(inst: &Instance, rows: &[u64]) -> Scheme {
    let txs = rows
        .iter()
        .map(|&r| {
            Transmission::new((0..inst.m()).filter(|j| r >> j & 1 == 1).map(|j| j + 1))
                .expect("non-empty row")
        })
        .collect();
    Scheme::new(*inst, txs)
        .expect("rows are in range")
        .with_resolved_senders()
}

/// Minimum length over row spaces of dimension at most `max_dim`, on the global pool.
pub fn search(inst: &Instance, max_dim: usize) -> Result<OracleResult, OracleError> {
    let (m, s) = (inst.m(), inst.s());
    if m > MAX_M {
        return Err(OracleError::TooLarge { m, limit: MAX_M });
    }
    let windowed: Vec<u64> = (1u64..1 << m).filter(|&x| mask::windowed(m, s, x)).collect();
    let mut stats = OracleStats {
        windowed_vectors: windowed.len(),
        ..OracleStats::default()
    };
    let mut level: Vec<Basis> = vec![Vec::new()];
    for dim in 1..=max_dim.min(m) {
        let mut fresh: HashSet<Basis> = HashSet::new();
        for b in &level {
            fresh.extend(windowed.iter().filter_map(|&w| extend(b, w)));
        }
        let mut candidates: Vec<Basis> = fresh.into_iter().collect();
        stats.spaces_examined += candidates.len() as u64;
        let scored: Vec<(Basis, bool)> = candidates
            .par_drain(..)
            .filter_map(|b| {
                let (sat, leak) = mask::score(m, s, &b);
                (leak == 0).then_some((b, sat == m))
            })
            .collect();
        if let Some(best) = scored.iter().filter(|(_, ok)| *ok).map(|(b, _)| b).min() {
            stats.kept_per_dim.push(scored.len());
            let rows = windowed_generators(best, &windowed);
            return Ok(OracleResult {
                instance: *inst,
                status: OracleStatus::Feasible {
                    min_length: dim,
                    witness: witness(inst, &rows),
                },
                stats,
            });
        }
        stats.kept_per_dim.push(scored.len());
        if scored.is_empty() {
            return Ok(OracleResult { instance: *inst, status: OracleStatus::Infeasible, stats });
        }
        level = scored.into_iter().map(|(b, _)| b).collect();
        level.sort_unstable();
    }
    // At dimension m only the full space is left, and it is either valid or
    // leaking, so the loop above always returns when max_dim >= m.
    let status = if max_dim >= m {
        OracleStatus::Infeasible
    } else {
        OracleStatus::Unknown {
            searched_up_to_dim: max_dim,
        }
    };
    Ok(OracleResult { instance: *inst, status, stats })
}

/// [`search`] on a dedicated pool of `jobs` worker threads.
pub fn search_with_jobs(inst: &Instance, max_dim: usize, jobs: usize) -> Result<OracleResult, OracleError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| OracleError::Pool(e.to_string()))?;
    pool.install(|| search(inst, max_dim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Infeasible,
    Feasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertEntry {
    pub instance: Instance,
    pub expected: Expectation,
    pub result: OracleResult,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport {
    pub header: &'static str,
    pub entries: Vec<CertEntry>,
}

impl CertificationReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn mismatches(&self) -> Vec<&CertEntry> {
        self.entries.iter().filter(|e| !e.ok).collect()
    }
}

/// Feasible instances checked alongside the infeasible ones.
pub const CONTROLS: [(usize, usize); 3] = [(9, 5), (9, 6), (8, 4)];

/// Every instance with `m <= max_m` classified infeasible, followed by the controls.
pub fn certification_set(max_m: usize) -> Vec<(Instance, Expectation)> {
    let mut out: Vec<(Instance, Expectation)> = (2..=max_m)
        .flat_map(|m| (1..m).map(move |s| Instance::new(m, s).expect("s < m")))
        .filter(|x| matches!(classify(x), Classification::Infeasible(_)))
        .map(|x| (x, Expectation::Infeasible))
        .collect();
    out.extend(
        CONTROLS
            .iter()
            .filter(|(m, _)| *m <= max_m)
            .map(|&(m, s)| (Instance::new(m, s).expect("control"), Expectation::Feasible)),
    );
    out
}

/// Runs the full search on every instance of [`certification_set`] and compares with the claim.
pub fn certify_classification(max_m: usize) -> Result<CertificationReport, OracleError> {
    let entries = certification_set(max_m)
        .into_par_iter()
        .map(|(inst, expected)| {
            let result = search(&inst, inst.m())?;
            let ok = matches!(
                (&result.status, expected),
                (OracleStatus::Infeasible, Expectation::Infeasible)
                    | (OracleStatus::Feasible { .. }, Expectation::Feasible)
            );
            Ok(CertEntry { instance: inst, expected, result, ok })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(CertificationReport { header: REPORT_HEADER, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::verify;

    fn inst(m: usize, s: usize) -> Instance {
        Instance::new(m, s).unwrap()
    }

    fn min_len(r: &OracleResult) -> Option<usize> {
        match &r.status {
            OracleStatus::Feasible { min_length, .. } => Some(*min_length),
            _ => None,
        }
    }

    #[test]
    fn extend_keeps_reduced_form() {
        let b = extend(&[], 0b110).unwrap();
        let b = extend(&b, 0b011).unwrap();
        assert_eq!(b, vec![0b101, 0b011]);
        assert!(extend(&b, 0b110).is_none());
        assert!(in_span(&b, 0b110));
    }

    #[test]
    fn small_infeasible_instances() {
        for (m, s) in [(5, 2), (7, 4), (5, 3)] {
            assert_eq!(search(&inst(m, s), m).unwrap().status, OracleStatus::Infeasible);
        }
    }

    #[test]
    fn feasible_witness_is_valid() {
        for (m, s, len) in [(6, 3, 2), (8, 4, 2), (8, 3, 4), (10, 7, 3)] {
            let r = search(&inst(m, s), m).unwrap();
            assert_eq!(min_len(&r), Some(len), "({m},{s})");
            if let OracleStatus::Feasible { witness, .. } = r.status {
                assert_eq!(witness.len(), len);
                assert!(verify(&witness).valid);
            }
        }
    }

    #[test]
    fn shallow_search_is_unknown_or_same() {
        let r = search(&inst(8, 3), 3).unwrap();
        assert_eq!(r.status, OracleStatus::Unknown { searched_up_to_dim: 3 });
        assert_eq!(min_len(&search(&inst(8, 3), 4).unwrap()), Some(4));
        assert_eq!(min_len(&search(&inst(8, 3), 8).unwrap()), Some(4));
    }

    #[test]
    fn guard() {
        assert!(matches!(search(&inst(11, 5), 11), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn certification_set_contents() {
        let set = certification_set(9);
        let infeasible: Vec<(usize, usize)> = set
            .iter()
            .filter(|(_, e)| *e == Expectation::Infeasible)
            .map(|(x, _)| (x.m(), x.s()))
            .collect();
        for want in [(3, 1), (4, 1), (5, 1), (5, 2), (6, 2), (7, 2), (7, 3), (9, 3), (7, 4), (9, 4), (5, 3), (7, 5), (9, 7)] {
            assert!(infeasible.contains(&want), "{want:?}");
        }
        assert_eq!(set.len() - infeasible.len(), 3);
    }
}

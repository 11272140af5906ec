//! Decodability, security and decentralization checks for a scheme.
//!
//! User `i` learns message `j` exactly when the unit vector at `j` lies in the
//! row space of the generator restricted to the columns of `complement(i)`.
//! A scheme is correct when every user learns something, secure when no user
//! learns two messages, and decentralized when every transmission can be
//! computed by its sender from that sender's side information.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec, RowSpace};
use crate::instance::{Instance, InstanceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("transmission support must be non-empty")]
    EmptySupport,
    #[error("transmission {index}: {source}")]
    BadIndex {
        index: usize,
        #[source]
        source: InstanceError,
    },
    #[error("brute-force check needs m <= {limit}, got m={m}")]
    TooLarge { m: usize, limit: usize },
}

/// One coded symbol: the XOR of the messages in `support`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transmission {
    support: Vec<usize>,
    sender: Option<usize>,
}

impl Transmission {
    /// Builds a transmission with no explicit sender. The support is sorted and deduplicated.
    pub fn new<I: IntoIterator<Item = usize>>(support: I) -> Result<Self, SchemeError> {
        let mut support: Vec<usize> = support.into_iter().collect();
        support.sort_unstable();
        support.dedup();
        if support.is_empty() {
            return Err(SchemeError::EmptySupport);
        }
        Ok(Transmission {
            support,
            sender: None,
        })
    }

    pub fn with_sender(mut self, sender: usize) -> Self {
        self.sender = Some(sender);
        self
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn sender(&self) -> Option<usize> {
        self.sender
    }
}

/// An ordered list of transmissions for an instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scheme {
    instance: Instance,
    transmissions: Vec<Transmission>,
}

impl Scheme {
    pub fn new(instance: Instance, transmissions: Vec<Transmission>) -> Result<Self, SchemeError> {
        let m = instance.m();
        for (t, tx) in transmissions.iter().enumerate() {
            let bad = tx
                .support
                .iter()
                .copied()
                .chain(tx.sender)
                .find(|&x| x == 0 || x > m);
            if let Some(index) = bad {
                return Err(SchemeError::BadIndex {
                    index: t,
                    source: InstanceError::IndexOutOfRange { index, m },
                });
            }
        }
        Ok(Scheme {
            instance,
            transmissions,
        })
    }

    /// Convenience constructor from raw index lists; senders are left implicit.
    pub fn from_supports(instance: Instance, supports: &[Vec<usize>]) -> Result<Self, SchemeError> {
        let txs = supports
            .iter()
            .map(|s| Transmission::new(s.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(instance, txs)
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn transmissions(&self) -> &[Transmission] {
        &self.transmissions
    }

    pub fn len(&self) -> usize {
        self.transmissions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transmissions.is_empty()
    }

    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.transmissions.iter().map(|t| t.support.clone()).collect()
    }

    /// One row per transmission, column `j - 1` set for each message `j` in the support.
    pub fn generator(&self) -> BitMatrix {
        let m = self.instance.m();
        let rows = self
            .transmissions
            .iter()
            .map(|t| BitVec::from_indices(m, t.support.iter().map(|j| j - 1)).expect("validated"))
            .collect();
        BitMatrix::from_rows(m, rows).expect("same width")
    }

    /// Returns the same scheme with every sender filled in by [`resolve_sender`].
    /// Transmissions that no user can send keep `None`.
    pub fn with_resolved_senders(&self) -> Scheme {
        let transmissions = self
            .transmissions
            .iter()
            .map(|t| Transmission {
                support: t.support.clone(),
                sender: t.sender.or_else(|| resolve_sender(&self.instance, &t.support)),
            })
            .collect();
        Scheme {
            instance: self.instance,
            transmissions,
        }
    }
}

/// Smallest user whose side information contains `support`.
pub fn resolve_sender(inst: &Instance, support: &[usize]) -> Option<usize> {
    (1..=inst.m()).find(|&u| can_send(inst, u, support))
}

fn can_send(inst: &Instance, user: usize, support: &[usize]) -> bool {
    support.iter().all(|&j| inst.knows(user, j))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `decodable[i - 1]` is the sorted set of messages user `i` learns.
    pub decodable: Vec<Vec<usize>>,
    /// Effective sender per transmission, `None` where no valid sender exists.
    pub senders: Vec<Option<usize>>,
    pub decentralized_ok: bool,
    pub correct: bool,
    pub secure: bool,
    pub valid: bool,
    /// Served message per user, when every user learns at least one.
    pub assignment: Option<Vec<usize>>,
}

impl VerificationReport {
    fn assemble(decodable: Vec<Vec<usize>>, senders: Vec<Option<usize>>, decentralized_ok: bool) -> Self {
        let correct = decodable.iter().all(|d| !d.is_empty());
        let secure = decodable.iter().all(|d| d.len() <= 1);
        let assignment = correct.then(|| decodable.iter().map(|d| d[0]).collect());
        VerificationReport {
            decodable,
            senders,
            decentralized_ok,
            correct,
            secure,
            valid: decentralized_ok && correct && secure,
            assignment,
        }
    }

    /// Users whose decodable set is exactly one message.
    pub fn satisfied_users(&self) -> Vec<usize> {
        (1..=self.decodable.len())
            .filter(|&u| self.decodable[u - 1].len() == 1)
            .collect()
    }
}

fn check_senders(scheme: &Scheme) -> (Vec<Option<usize>>, bool) {
    let inst = scheme.instance;
    let senders: Vec<Option<usize>> = scheme
        .transmissions
        .iter()
        .map(|t| match t.sender {
            Some(u) => can_send(&inst, u, &t.support).then_some(u),
            None => resolve_sender(&inst, &t.support),
        })
        .collect();
    let ok = senders.iter().all(Option::is_some);
    (senders, ok)
}

/// Messages user `i` learns from `scheme`.
pub fn decodable_set(scheme: &Scheme, i: usize) -> Result<Vec<usize>, InstanceError> {
    let inst = scheme.instance;
    let comp = inst.complement(i)?;
    let cols: Vec<usize> = comp.iter().map(|j| j - 1).collect();
    let projected = scheme.generator().project(&cols).expect("complement columns in range");
    Ok(projected
        .unit_rows_in_span()
        .into_iter()
        .map(|k| comp[k])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// Full verification through row-space membership.
pub fn verify(scheme: &Scheme) -> VerificationReport {
    let inst = scheme.instance;
    let (senders, decentralized_ok) = check_senders(scheme);
    let g = scheme.generator();
    let decodable = (1..=inst.m())
        .map(|i| {
            let comp = inst.complement(i).expect("in range");
            let cols: Vec<usize> = comp.iter().map(|j| j - 1).collect();
            let projected = g.project(&cols).expect("in range");
            let space = RowSpace::from_rows(cols.len(), projected.rows());
            let mut d: Vec<usize> = space.unit_vectors().into_iter().map(|k| comp[k]).collect();
            d.sort_unstable();
            d
        })
        .collect();
    VerificationReport::assemble(decodable, senders, decentralized_ok)
}

/// Largest `m` accepted by [`brute_force_check`].
pub const BRUTE_FORCE_MAX_M: usize = 12;

/// Independent check by enumerating every binary message tuple.
///
/// For each user, tuples are grouped by what the user observes (all
/// transmitted values plus its side information). Message `j` is decodable
/// when it takes a single value within every group.
pub fn brute_force_check(scheme: &Scheme) -> Result<VerificationReport, SchemeError> {
    let inst = scheme.instance;
    let m = inst.m();
    if m > BRUTE_FORCE_MAX_M {
        return Err(SchemeError::TooLarge {
            m,
            limit: BRUTE_FORCE_MAX_M,
        });
    }
    let masks: Vec<u32> = scheme
        .transmissions
        .iter()
        .map(|t| t.support.iter().fold(0u32, |acc, j| acc | 1 << (j - 1)))
        .collect();
    let all = (1u32 << m) - 1;
    let encode = |w: u32| -> u64 {
        masks
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &mask)| acc | u64::from((w & mask).count_ones() & 1) << k)
    };
    let codewords: Vec<u64> = (0..=all).map(encode).collect();

    let mut decodable = Vec::with_capacity(m);
    for i in 1..=m {
        let side: u32 = inst
            .side_info(i)
            .expect("in range")
            .iter()
            .fold(0, |acc, j| acc | 1 << (j - 1));
        // observation -> (OR of tuples, AND of tuples)
        let mut groups: HashMap<(u64, u32), (u32, u32)> = HashMap::new();
        for w in 0..=all {
            let e = groups.entry((codewords[w as usize], w & side)).or_insert((0, all));
            e.0 |= w;
            e.1 &= w;
        }
        let mut varying = 0u32;
        for (or, and) in groups.values() {
            varying |= or ^ and;
        }
        let d: Vec<usize> = inst
            .complement(i)
            .expect("in range")
            .into_iter()
            .filter(|j| varying >> (j - 1) & 1 == 0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        decodable.push(d);
    }
    let (senders, decentralized_ok) = check_senders(scheme);
    Ok(VerificationReport::assemble(decodable, senders, decentralized_ok))
}

/// Bitmask form of the verifier for `m <= 64`.
///
/// Message `j` is bit `j - 1`. Used by the exhaustive and randomized searches,
/// where building [`Scheme`] values per candidate would dominate the cost.
pub mod mask {
    /// Bit mask of the `len` circularly consecutive messages starting at `start` (1-based).
    pub fn run(m: usize, start: usize, len: usize) -> u64 {
        (0..len).fold(0u64, |acc, k| acc | 1 << ((start - 1 + k) % m))
    }

    /// Complement window of user `i`.
    pub fn complement(m: usize, s: usize, i: usize) -> u64 {
        run(m, i % m + 1, m - s)
    }

    /// Whether some user can send `support`: its largest circular gap exceeds `m - s`.
    pub fn windowed(m: usize, s: usize, support: u64) -> bool {
        if support == 0 {
            return false;
        }
        let p = m - s;
        let mut last = None;
        let mut first = 0;
        let mut largest = 0;
        for j in 0..m {
            if support >> j & 1 == 1 {
                match last {
                    None => first = j,
                    Some(l) => largest = largest.max(j - l),
                }
                last = Some(j);
            }
        }
        largest = largest.max(first + m - last.unwrap());
        largest > p
    }

    /// Reduced row basis over the columns in `cols`.
    fn basis(rows: &[u64], cols: u64) -> Vec<u64> {
        let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
        for &r in rows {
            let mut v = r & cols;
            for &b in &basis {
                let piv = b & b.wrapping_neg();
                if v & piv != 0 {
                    v ^= b;
                }
            }
            if v != 0 {
                let piv = v & v.wrapping_neg();
                for b in basis.iter_mut() {
                    if *b & piv != 0 {
                        *b ^= v;
                    }
                }
                basis.push(v);
            }
        }
        basis
    }

    /// Messages of user `i`'s complement whose unit vectors lie in the projected row space.
    pub fn decodable(m: usize, s: usize, rows: &[u64], i: usize) -> u64 {
        let cols = complement(m, s, i);
        let basis = basis(rows, cols);
        let mut out = 0u64;
        let mut rest = cols;
        while rest != 0 {
            let e = rest & rest.wrapping_neg();
            rest ^= e;
            let mut v = e;
            for &b in &basis {
                let piv = b & b.wrapping_neg();
                if v & piv != 0 {
                    v ^= b;
                }
            }
            if v == 0 {
                out |= e;
            }
        }
        out
    }

    /// Number of users that learn exactly one message, and whether any learns two or more.
    pub fn score(m: usize, s: usize, rows: &[u64]) -> (usize, usize) {
        let mut satisfied = 0;
        let mut leaking = 0;
        for i in 1..=m {
            match decodable(m, s, rows, i).count_ones() {
                0 => {}
                1 => satisfied += 1,
                _ => leaking += 1,
            }
        }
        (satisfied, leaking)
    }

    /// Correct and secure: every user learns exactly one message. Senders are not checked.
    pub fn secure_and_correct(m: usize, s: usize, rows: &[u64]) -> bool {
        (1..=m).all(|i| decodable(m, s, rows, i).count_ones() == 1)
    }

    /// Full validity, including that every row is windowed.
    pub fn valid(m: usize, s: usize, rows: &[u64]) -> bool {
        rows.iter().all(|&r| windowed(m, s, r)) && secure_and_correct(m, s, rows)
    }
}

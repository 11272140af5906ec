//! The `(m, s)` problem instance, circular index arithmetic and classification.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("side-information size s={s} must satisfy 1 <= s <= m-1 (m={m})")]
    BadShape { m: usize, s: usize },
    #[error("index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("support must be non-empty")]
    EmptySupport,
}

/// An `(m, s)` instance: `m` messages and users, side information of size `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    m: usize,
    s: usize,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    m: usize,
    s: usize,
}

impl TryFrom<RawInstance> for Instance {
    type Error = InstanceError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        Instance::new(raw.m, raw.s)
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        RawInstance {
            m: inst.m,
            s: inst.s,
        }
    }
}

impl Instance {
    /// Scalar symbols per message. Every construction here is scalar.
    pub const KAPPA: usize = 1;

    pub fn new(m: usize, s: usize) -> Result<Self, InstanceError> {
        if s == 0 || s >= m {
            return Err(InstanceError::BadShape { m, s });
        }
        Ok(Instance { m, s })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Size of every complement window, `m - s`.
    pub fn p(&self) -> usize {
        self.m - self.s
    }

    /// Reduces any integer to `1..=m`, mapping multiples of `m` to `m`.
    pub fn wrap(&self, i: i64) -> usize {
        let m = self.m as i64;
        (((i - 1) % m + m) % m + 1) as usize
    }

    fn check(&self, i: usize) -> Result<(), InstanceError> {
        if i == 0 || i > self.m {
            Err(InstanceError::IndexOutOfRange { index: i, m: self.m })
        } else {
            Ok(())
        }
    }

    /// Messages known to user `i`: `i, i-1, ..., i-s+1`.
    pub fn side_info(&self, i: usize) -> Result<Vec<usize>, InstanceError> {
        self.check(i)?;
        Ok((0..self.s).map(|k| self.wrap(i as i64 - k as i64)).collect())
    }

    /// Messages unknown to user `i`: `i+1, ..., i+p`.
    pub fn complement(&self, i: usize) -> Result<Vec<usize>, InstanceError> {
        self.check(i)?;
        Ok((1..=self.p()).map(|k| self.wrap((i + k) as i64)).collect())
    }

    /// Whether user `i` knows message `j`.
    pub fn knows(&self, i: usize, j: usize) -> bool {
        // distance from j forward to i
        (i + self.m - j) % self.m < self.s
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, s={})", self.m, self.s)
    }
}

/// Length of the shortest circular run of `1..=m` containing every index of `support`.
pub fn min_circular_window(m: usize, support: &[usize]) -> Result<usize, InstanceError> {
    if support.is_empty() {
        return Err(InstanceError::EmptySupport);
    }
    let mut idx: Vec<usize> = Vec::with_capacity(support.len());
    for &x in support {
        if x == 0 || x > m {
            return Err(InstanceError::IndexOutOfRange { index: x, m });
        }
        idx.push(x);
    }
    idx.sort_unstable();
    idx.dedup();
    // the window is everything except the largest circular gap
    let wrap_gap = idx[0] + m - idx[idx.len() - 1];
    let largest_gap = idx
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(wrap_gap))
        .max()
        .unwrap();
    Ok(m - largest_gap + 1)
}

/// Why an instance admits no secure decentralized linear scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReasonCode {
    /// `s` in {1, 2} and `m >= 2s + 1`.
    S1or2,
    /// `s` in {3, 4}, odd `m >= 7`.
    S3or4OddM,
    /// `s = m - 2` with odd `m`.
    SEqMminus2OddM,
}

impl ReasonCode {
    pub fn describe(&self) -> &'static str {
        match self {
            ReasonCode::S1or2 => "s in {1,2} and m >= 2s+1",
            ReasonCode::S3or4OddM => "odd m, s in {3,4}",
            ReasonCode::SEqMminus2OddM => "odd m, s = m-2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Infeasible(ReasonCode),
    /// `m` is a multiple of `p`.
    Divisible,
    /// `m > 2s`, `s >= 5`.
    LargeM,
    /// `s < m <= 3s/2`, `s >= 5`, `p >= 4`.
    NarrowGap,
    /// `3s/2 < m < 2s`, `s >= 5`, `p >= 4`.
    WideGap,
    /// `s` in {3, 4} with even `m`.
    EdgeSmallS,
    /// `p = 3`.
    EdgeLargeS,
}

impl Classification {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, Classification::Infeasible(_))
    }

    /// Short machine-friendly name.
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Infeasible(_) => "infeasible",
            Classification::Divisible => "divisible",
            Classification::LargeM => "large-m",
            Classification::NarrowGap => "narrow-gap",
            Classification::WideGap => "wide-gap",
            Classification::EdgeSmallS => "edge-small-s",
            Classification::EdgeLargeS => "edge-large-s",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Classification::Infeasible(r) => format!("infeasible: {}", r.describe()),
            Classification::Divisible => "feasible: divisible".into(),
            Classification::LargeM => "feasible: large-m regime".into(),
            Classification::NarrowGap => "feasible: narrow-gap regime".into(),
            Classification::WideGap => "feasible: wide-gap regime".into(),
            Classification::EdgeSmallS => "feasible: small-s edge case".into(),
            Classification::EdgeLargeS => "feasible: large-s edge case (p=3)".into(),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn is_divisible(inst: &Instance) -> bool {
    inst.m % inst.p() == 0
}

/// The infeasibility list, evaluated without regard to divisibility.
pub fn infeasible_reason(inst: &Instance) -> Option<ReasonCode> {
    let (m, s) = (inst.m, inst.s);
    if (s == 1 || s == 2) && m > 2 * s {
        Some(ReasonCode::S1or2)
    } else if (s == 3 || s == 4) && m % 2 == 1 && m >= 7 {
        Some(ReasonCode::S3or4OddM)
    } else if s + 2 == m && m % 2 == 1 {
        Some(ReasonCode::SEqMminus2OddM)
    } else {
        None
    }
}

/// Regime predicates for feasible non-divisible instances, in a fixed order.
pub fn regime_predicates(inst: &Instance) -> [(Classification, bool); 5] {
    let (m, s, p) = (inst.m, inst.s, inst.p());
    [
        (Classification::LargeM, m > 2 * s && s >= 5),
        (Classification::NarrowGap, 2 * m <= 3 * s && s >= 5 && p >= 4),
        (
            Classification::WideGap,
            2 * m > 3 * s && m < 2 * s && s >= 5 && p >= 4,
        ),
        (
            Classification::EdgeSmallS,
            (s == 3 || s == 4) && m % 2 == 0,
        ),
        (Classification::EdgeLargeS, p == 3),
    ]
}

/// Total classification: divisibility first, then the infeasible list, then the regime.
pub fn classify(inst: &Instance) -> Classification {
    if is_divisible(inst) {
        return Classification::Divisible;
    }
    if let Some(r) = infeasible_reason(inst) {
        return Classification::Infeasible(r);
    }
    regime_predicates(inst)
        .into_iter()
        .find(|(_, holds)| *holds)
        .map(|(c, _)| c)
        .unwrap_or_else(|| unreachable!("no regime for {inst}"))
}

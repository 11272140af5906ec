//! Lower bounds and closed-form achievable lengths per regime.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::instance::{classify, Classification, Instance};

/// A non-negative rational `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    pub fn new(num: usize, den: usize) -> Self {
        assert!(den > 0);
        Ratio { num, den }
    }

    pub fn ceil(&self) -> usize {
        self.num.div_ceil(self.den)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Lower bound on the length of any secure linear scheme, `None` if infeasible.
///
/// `m/s` when `p | m`; `3m/2s` when `m > 2s` and for `p = 3`; `2` otherwise.
pub fn converse_bound(inst: &Instance) -> Option<Ratio> {
    let (m, s) = (inst.m(), inst.s());
    match classify(inst) {
        Classification::Infeasible(_) => None,
        Classification::Divisible => Some(Ratio::new(m, s)),
        _ if m > 2 * s || inst.p() == 3 => Some(Ratio::new(3 * m, 2 * s)),
        _ => Some(Ratio::new(2, 1)),
    }
}

/// What the constructions promise for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    Exact(usize),
    AtMost(usize),
}

impl Target {
    pub fn admits(&self, len: usize) -> bool {
        match *self {
            Target::Exact(n) => len == n,
            Target::AtMost(n) => len <= n,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Exact(n) => write!(f, "{n}"),
            Target::AtMost(n) => write!(f, "<={n}"),
        }
    }
}

/// The closed form for the instance's table row: a human formula and the length it gives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub formula: String,
    pub target: Target,
}

/// Length of the large-`m` composition as a function of `m mod 2s`.
pub fn large_m_length(m: usize, s: usize) -> usize {
    let r = m / (2 * s);
    let q = m % (2 * s);
    3 * r
        + match q {
            0 => 0,
            1 => 2,
            2 => 1,
            3 => 3,
            q if q <= s => 2,
            q if q <= 2 * s - 2 => 3,
            _ => 4,
        }
}

pub fn table_row(inst: &Instance) -> Option<TableRow> {
    let (m, s, p) = (inst.m(), inst.s(), inst.p());
    let row = |formula: &str, target| TableRow {
        formula: formula.to_string(),
        target,
    };
    Some(match classify(inst) {
        Classification::Infeasible(_) => return None,
        Classification::Divisible => row("m/(m-s)", Target::Exact(m / p)),
        Classification::LargeM => {
            let q = m % (2 * s);
            let formula = match q {
                0 => "3m/2s",
                1 => "3m/2s+(4s-3)/2s",
                2 => "3m/2s+(s-3)/s",
                3 => "3m/2s+(6s-9)/2s",
                q if q <= s => "3m/2s+(4s-3q)/2s",
                q if q <= 2 * s - 2 => "3m/2s+(6s-3q)/2s",
                _ => "3m/2s+(2s+3)/2s",
            };
            row(formula, Target::Exact(large_m_length(m, s)))
        }
        Classification::NarrowGap => row("<=4", Target::AtMost(4)),
        Classification::WideGap => row("<=9", Target::AtMost(9)),
        Classification::EdgeSmallS if s == 3 => row("m/2", Target::Exact(m / 2)),
        Classification::EdgeSmallS => row("3floor(m/8)+(m mod 8)/2", Target::Exact(3 * (m / 8) + (m % 8) / 2)),
        Classification::EdgeLargeS if m % 2 == 0 => row("3", Target::Exact(3)),
        Classification::EdgeLargeS => row("4", Target::Exact(4)),
    })
}

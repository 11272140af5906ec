//! Constructions for `m > 2s`: rounds of three pair transmissions, closed off
//! by one of the smaller blocks according to `m mod 2s`.

use super::{ensure_regime, gate, span, tx, BuildError, Built, SchemeRecipe};
use crate::bounds::large_m_length;
use crate::instance::{Classification, Instance};
use crate::verifier::Transmission;

/// Three pairs satisfying the `2s` users `u_i`, `u_{i+2..=i+2s-1}` and `u_{i+2s+1}`.
pub fn scheme1(inst: &Instance, i: i64) -> Vec<Transmission> {
    let s = inst.s() as i64;
    vec![
        tx(inst, [i, i + 1]),
        tx(inst, [i + 2, i + s]),
        tx(inst, [i + s + 1, i + s + 2]),
    ]
}

/// Four transmissions satisfying `u_i`, `u_{i+2..=i+2s+1}` and `u_{i+2s+3}`.
pub fn scheme2(inst: &Instance, i: i64) -> Vec<Transmission> {
    let s = inst.s() as i64;
    let c = ((s + 2) / 2).max(4);
    vec![
        tx(inst, span(i - (s - c + 1), i + 1)),
        tx(inst, [i + 2, i + c - 1]),
        tx(inst, [i + c, i + s + 2]),
        tx(inst, span(i + s + 3, i + s + c)),
    ]
}

/// Three transmissions satisfying `u_i`, `u_{i+2..=i+s+1}` and `u_{i+s+3}`.
pub fn scheme3(inst: &Instance, i: i64) -> Vec<Transmission> {
    let s = inst.s() as i64;
    if s % 2 == 0 {
        let h = s / 2;
        vec![
            tx(inst, [i - s + 3].into_iter().chain(span(i + 1 - h, i + 1))),
            tx(inst, span(i + 1, i + 3)),
            tx(inst, span(i + 3, i + h + 1).chain([i + s + 1])),
        ]
    } else {
        let h = (s - 1) / 2;
        vec![
            tx(inst, [i - s + 4].into_iter().chain(span(i + 2 - h, i + 1))),
            tx(inst, [i + 1, i + 2, i + 4]),
            tx(inst, span(i + 3, i + h + 3).chain([i + s + 1])),
        ]
    }
}

/// One to three transmissions satisfying `u_i`, `u_{i+2..=i+n'+1}` and `u_{i+n'+3}`.
///
/// Accepts `n'` in `{0} ∪ [2, 2s-4]`.
pub fn scheme4(inst: &Instance, i: i64, nprime: usize) -> Result<Vec<Transmission>, BuildError> {
    let s = inst.s() as i64;
    let n = nprime as i64;
    let h = (n + 1) / 2;
    let f = n / 2;
    let out = match n {
        0 => vec![tx(inst, span(i - s + 3, i + 1))],
        n if (2..=s - 2).contains(&n) => vec![
            tx(inst, [i + h + 2 - s].into_iter().chain(span(i + n - s + 2, i + 1))),
            tx(inst, span(i + n - s + 3, i + 2).chain([i + h + 2])),
        ],
        n if n == s - 1 || n == s => {
            let middle = if n == s - 1 { i } else { i + 1 };
            let tail = if n == s - 1 { i + 2 } else { i + 3 };
            vec![
                tx(inst, [i - s + 3].into_iter().chain(span(i + f - s + 2, i + 1))),
                tx(inst, span(middle, i + 3)),
                tx(inst, span(tail, i + 2 + f).chain([i + 1 + n])),
            ]
        }
        n if (s + 1..=2 * s - 4).contains(&n) => vec![
            tx(inst, [i + 2 + n - 2 * s].into_iter().chain(span(i + f - s + 2, i + 1))),
            tx(inst, [i + 2, i + 2 + n - s]),
            tx(inst, span(i + 3 + n - s, i + 2 + f).chain([i + 2 + s])),
        ],
        _ => {
            return Err(BuildError::BadParameters(format!(
                "scheme 4 needs n' in {{0}} or [2, {}], got {nprime}",
                2 * s - 4
            )))
        }
    };
    Ok(out)
}

/// The full large-`m` composition.
pub fn compose_large_m(inst: &Instance) -> Result<Built, BuildError> {
    ensure_regime(inst, &[Classification::LargeM])?;
    compose(inst, "compose_large_m")
}

/// Rounds of [`scheme1`] closed by the tail for `m mod 2s`, without a regime check.
pub(crate) fn compose(inst: &Instance, name: &str) -> Result<Built, BuildError> {
    let (m, s) = (inst.m(), inst.s());
    let two_s = 2 * s;
    let r = m / two_s;
    let q = m % two_s;
    let round_start = |k: usize| 1 + (two_s * k) as i64;

    let mut txs = Vec::new();
    let mut recipe = SchemeRecipe::new(name)
        .param("r", r as i64)
        .param("q", q as i64);
    let tail = match q {
        1 | 3 => {
            let start = round_start(r - 1);
            let nprime = s + q - 4;
            for k in 0..r - 1 {
                txs.extend(scheme1(inst, round_start(k)));
            }
            txs.extend(scheme3(inst, start));
            txs.extend(scheme4(inst, start + s as i64 + 2, nprime)?);
            recipe = recipe.param("scheme3_i", start).param("nprime", nprime as i64);
            "scheme3+scheme4"
        }
        q if q == two_s - 1 => {
            let start = round_start(r - 1);
            let nprime = two_s - 5;
            for k in 0..r - 1 {
                txs.extend(scheme1(inst, round_start(k)));
            }
            txs.extend(scheme2(inst, start));
            txs.extend(scheme4(inst, start + two_s as i64 + 2, nprime)?);
            recipe = recipe.param("scheme2_i", start).param("nprime", nprime as i64);
            "scheme2+scheme4"
        }
        0 => {
            for k in 0..r {
                txs.extend(scheme1(inst, round_start(k)));
            }
            "rounds"
        }
        q => {
            let start = round_start(r);
            let nprime = q - 2;
            for k in 0..r {
                txs.extend(scheme1(inst, round_start(k)));
            }
            txs.extend(scheme4(inst, start, nprime)?);
            recipe = recipe.param("scheme4_i", start).param("nprime", nprime as i64);
            "scheme4"
        }
    };
    let recipe = recipe.note("tail", tail).expect(large_m_length(m, s));
    gate(inst, txs, recipe)
}

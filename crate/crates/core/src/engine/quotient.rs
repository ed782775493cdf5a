//! Combinatorics of monomial modules: standard-monomial counts and Krull
//! dimension via maximal independent variable sets.

use alloc::vec::Vec;

use crate::monomial::Monomial;
use crate::value::Value;

fn minimal_generators(mons: Vec<&Monomial>) -> Vec<&Monomial> {
    let mut out: Vec<&Monomial> = Vec::new();
    for (i, m) in mons.iter().enumerate() {
        let redundant = mons
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && o.divides(m) && (*o != *m || j < i));
        if !redundant {
            out.push(m);
        }
    }
    out
}

fn per_component(leading: &[(usize, Monomial)], rank: usize) -> Vec<Vec<&Monomial>> {
    let mut comps: Vec<Vec<&Monomial>> = (0..rank).map(|_| Vec::new()).collect();
    for (c, m) in leading {
        comps[*c].push(m);
    }
    comps.into_iter().map(minimal_generators).collect()
}

pub(crate) fn count_standard_monomials(
    leading: &[(usize, Monomial)],
    rank: usize,
    nvars: usize,
) -> Value {
    let mut total: i64 = 0;
    for gens in per_component(leading, rank) {
        if gens.iter().any(|m| m.is_one()) {
            continue;
        }
        for v in 0..nvars {
            if !gens.iter().any(|m| m.pure_power_of() == Some(v)) {
                return Value::Infinite;
            }
        }
        let exps: Vec<&[u32]> = gens.iter().map(|m| m.exponents()).collect();
        total += count_below(&exps, 0, nvars) as i64;
    }
    Value::Finite(total)
}

/// Monomials in variables `var..` not divisible by any of `gens` (which are
/// already restricted to those whose earlier exponents are dominated).
fn count_below(gens: &[&[u32]], var: usize, nvars: usize) -> u64 {
    if gens.iter().any(|g| g[var..].iter().all(|e| *e == 0)) {
        return 0;
    }
    if var == nvars {
        return 1;
    }
    let bound = gens
        .iter()
        .filter(|g| g[var + 1..].iter().all(|e| *e == 0))
        .map(|g| g[var])
        .min()
        .expect("finite quotient has a pure power in every variable");
    let mut total = 0;
    for e in 0..bound {
        let sub: Vec<&[u32]> = gens.iter().filter(|g| g[var] <= e).copied().collect();
        total += count_below(&sub, var + 1, nvars);
    }
    total
}

/// Number of standard monomials of each degree `0..=max_deg`, summed over components.
pub(crate) fn standard_monomials_by_degree(
    leading: &[(usize, Monomial)],
    rank: usize,
    nvars: usize,
    max_deg: u32,
) -> Vec<u64> {
    fn go(gens: &[&[u32]], exps: &mut Vec<u32>, var: usize, deg: u32, max_deg: u32, out: &mut [u64]) {
        if var == exps.len() {
            let divisible = gens.iter().any(|g| g.iter().zip(exps.iter()).all(|(a, b)| a <= b));
            if !divisible {
                out[deg as usize] += 1;
            }
            return;
        }
        for e in 0..=max_deg - deg {
            exps[var] = e;
            go(gens, exps, var + 1, deg + e, max_deg, out);
        }
        exps[var] = 0;
    }
    let mut out = alloc::vec![0u64; max_deg as usize + 1];
    for gens in per_component(leading, rank) {
        let exps: Vec<&[u32]> = gens.iter().map(|m| m.exponents()).collect();
        go(&exps, &mut alloc::vec![0; nvars], 0, 0, max_deg, &mut out);
    }
    out
}

/// `C(d + n, n)`, the number of monomials of degree `≤ d` in `n` variables.
pub(crate) fn monomials_up_to(nvars: usize, d: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=nvars as u128 {
        acc = acc.saturating_mul(d as u128 + i) / i;
    }
    acc
}

/// `None` when the quotient is zero.
pub(crate) fn krull_dimension(
    leading: &[(usize, Monomial)],
    rank: usize,
    nvars: usize,
) -> Option<u32> {
    assert!(nvars <= 64, "dimension computation supports at most 64 variables");
    per_component(leading, rank)
        .into_iter()
        .filter(|gens| !gens.iter().any(|m| m.is_one()))
        .map(|gens| {
            let masks: Vec<u64> = gens.iter().map(|m| m.support_mask()).collect();
            max_independent(&masks, nvars)
        })
        .max()
}

/// Largest set of variables containing the support of no leading monomial.
fn max_independent(masks: &[u64], nvars: usize) -> u32 {
    fn go(masks: &[u64], var: usize, nvars: usize, chosen: u64, size: u32, best: &mut u32) {
        if size + (nvars - var) as u32 <= *best {
            return;
        }
        if var == nvars {
            *best = size;
            return;
        }
        let with = chosen | (1 << var);
        if !masks.iter().any(|m| m & !with == 0) {
            go(masks, var + 1, nvars, with, size + 1, best);
        }
        go(masks, var + 1, nvars, chosen, size, best);
    }
    let mut best = 0;
    go(masks, 0, nvars, 0, 0, &mut best);
    best
}

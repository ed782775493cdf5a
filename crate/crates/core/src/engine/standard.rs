//! Buchberger's algorithm with Mora's normal form.
//!
//! For a global degree ordering the ecart of every vector is zero, so the
//! normal form below degenerates to ordinary top-reduction. For a local
//! ordering it is Mora's weak normal form: among reducers with a dividing
//! leading term the one with minimal ecart is used, and the current remainder
//! joins the reducer set whenever the chosen reducer has larger ecart.

use alloc::vec::Vec;

use log::trace;

use super::budget::Budget;
use super::vector::Vector;
use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrdering};

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: Vector,
    pub comp: usize,
    pub lm: Monomial,
    pub mask: u64,
    pub ecart: u32,
}

impl Elem {
    pub fn new(v: Vector) -> Elem {
        let lead = v.lead().expect("basis elements are nonzero");
        Elem {
            comp: lead.comp,
            lm: lead.mon.clone(),
            mask: lead.mon.support_mask(),
            ecart: v.ecart(),
            v,
        }
    }

    fn divides_lead(&self, comp: usize, mon: &Monomial, mask: u64) -> bool {
        self.comp == comp && self.mask & !mask == 0 && self.lm.divides(mon)
    }
}

/// One reduction step of `h` by `r`, cancelling the leading term of `h`.
fn reduce_step(h: &Vector, r: &Vector, ord: &MonomialOrdering) -> Vector {
    let lt = h.lead().expect("nonzero");
    let rl = r.lead().expect("nonzero");
    let c = &lt.coeff / &rl.coeff;
    let m = rl.mon.quotient_of(&lt.mon).expect("divisible leading term");
    h.sub_mul(&c, &m, r, ord)
}

/// Reduces the leading term of `h` against `g` until no leading monomial in
/// `g` divides it. For local orderings this is Mora's weak normal form: the
/// result equals `u·h - Σ aᵢgᵢ` for a unit `u`.
pub(crate) fn mora_nf(
    h: Vector,
    g: &[Elem],
    ord: &MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<Vector> {
    nf(h, g, ord, None, budget)
}

/// With `trunc = Some(d)` every term of degree `≥ d` is discarded, i.e. the
/// reduction happens in `R/m^d`. That ring is already local and reductions
/// there terminate, so the ecart bookkeeping is skipped.
fn nf(
    mut h: Vector,
    g: &[Elem],
    ord: &MonomialOrdering,
    trunc: Option<u32>,
    budget: &Budget<'_>,
) -> Result<Vector> {
    if let Some(d) = trunc {
        h.truncate(d);
    }
    let local = ord.is_local() && trunc.is_none();
    let mut extra: Vec<Elem> = Vec::new();
    let mut h_ecart = if local { h.ecart() } else { 0 };
    loop {
        let Some(lt) = h.lead() else { return Ok(h) };
        let mask = lt.mon.support_mask();
        let mut best: Option<(bool, usize, u32)> = None;
        for (i, e) in g.iter().enumerate() {
            if e.divides_lead(lt.comp, &lt.mon, mask) && best.is_none_or(|b| e.ecart < b.2) {
                best = Some((false, i, e.ecart));
                if e.ecart == 0 {
                    break;
                }
            }
        }
        if local && best.is_none_or(|b| b.2 > 0) {
            for (i, e) in extra.iter().enumerate() {
                if e.divides_lead(lt.comp, &lt.mon, mask) && best.is_none_or(|b| e.ecart < b.2) {
                    best = Some((true, i, e.ecart));
                }
            }
        }
        let Some((from_extra, idx, r_ecart)) = best else { return Ok(h) };
        budget.tick()?;

        let reducer = if from_extra { &extra[idx].v } else { &g[idx].v };
        let mut next = reduce_step(&h, reducer, ord);
        if let Some(d) = trunc {
            next.truncate(d);
        }
        if local && r_ecart > h_ecart {
            extra.push(Elem::new(h));
        }
        h = next;
        if local {
            h_ecart = h.ecart();
        }
    }
}

/// Full reduction (every term, not just the leading one). Only meaningful for
/// global orderings, where it yields the unique normal form w.r.t. a Gröbner basis.
pub(crate) fn full_nf(
    h: Vector,
    g: &[Elem],
    ord: &MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<Vector> {
    let mut done = Vec::new();
    let mut rest = h;
    loop {
        rest = mora_nf(rest, g, ord, budget)?;
        if rest.is_zero() {
            return Ok(Vector { terms: done });
        }
        let lead = rest.terms.remove(0);
        done.push(lead);
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
    key: (u32, u32),
}

impl Pair {
    fn new(basis: &[Elem], i: usize, j: usize) -> Pair {
        let lcm = basis[i].lm.lcm(&basis[j].lm);
        let deg = lcm.degree();
        Pair {
            i,
            j,
            comp: basis[i].comp,
            key: (deg + basis[i].ecart.max(basis[j].ecart), deg),
            lcm,
        }
    }
}

/// S-vector of two monic basis elements with leading terms in the same component.
pub(crate) fn s_vector(a: &Elem, b: &Elem, ord: &MonomialOrdering) -> Vector {
    let lcm = a.lm.lcm(&b.lm);
    let ma = a.lm.quotient_of(&lcm).expect("lcm");
    let mb = b.lm.quotient_of(&lcm).expect("lcm");
    let ca = &a.v.lead().expect("nonzero").coeff;
    let cb = &b.v.lead().expect("nonzero").coeff;
    // cb·ma·a − ca·mb·b
    let left = Vector::default().sub_mul(&-cb.clone(), &ma, &a.v, ord);
    left.sub_mul(ca, &mb, &b.v, ord)
}

pub(crate) struct Buchberger<'o> {
    ord: &'o MonomialOrdering,
    /// Product criterion only holds for ideals.
    ideal_case: bool,
    trunc: Option<u32>,
    basis: Vec<Elem>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'o> Buchberger<'o> {
    pub fn new(ord: &'o MonomialOrdering, ideal_case: bool) -> Self {
        Buchberger {
            ord,
            ideal_case,
            trunc: None,
            basis: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Computes modulo `m^d` instead.
    pub fn truncated(mut self, d: u32) -> Self {
        self.trunc = Some(d);
        self
    }

    fn insert(&mut self, mut h: Vector) {
        h.make_monic();
        let k = self.basis.len();
        self.basis.push(Elem::new(h));
        self.active.push(true);
        self.update(k);
    }

    /// Gebauer–Möller installation of the pairs formed with element `k`.
    fn update(&mut self, k: usize) {
        let basis = &self.basis;
        let h = &basis[k];
        let coprime = |i: usize| self.ideal_case && basis[i].lm.is_coprime(&h.lm);

        let candidates: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i] && basis[i].comp == h.comp)
            .map(|i| Pair::new(basis, i, k))
            .collect();
        let mut kept: Vec<Pair> = Vec::with_capacity(candidates.len());
        for (idx, p) in candidates.iter().enumerate() {
            if coprime(p.i) {
                kept.push(p.clone());
                continue;
            }
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if !dominated {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !coprime(p.i));

        self.pairs.retain(|p| {
            if p.comp != h.comp || !h.lm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm.lcm(&h.lm);
            let lj = basis[p.j].lm.lcm(&h.lm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);

        for i in 0..k {
            if self.active[i] && basis[i].comp == h.comp && h.lm.divides(&basis[i].lm) {
                self.active[i] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.key.cmp(&b.1.key).then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)?;
        Some(self.pairs.remove(best))
    }

    pub fn run(mut self, gens: Vec<Vector>, budget: &Budget<'_>) -> Result<Vec<Elem>> {
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let h = nf(g, &self.basis, self.ord, self.trunc, budget)?;
            if !h.is_zero() {
                self.insert(h);
            }
        }
        while let Some(p) = self.pop_pair() {
            let s = s_vector(&self.basis[p.i], &self.basis[p.j], self.ord);
            let h = nf(s, &self.basis, self.ord, self.trunc, budget)?;
            trace!(
                "S({}, {}) at degree {} -> {}",
                p.i,
                p.j,
                p.lcm.degree(),
                if h.is_zero() { "0" } else { "new element" }
            );
            if !h.is_zero() {
                self.insert(h);
            }
        }
        Ok(minimize(self.basis))
    }
}

/// Drops elements whose leading term is divisible by another's; the remaining
/// leading terms still generate the leading module.
pub(crate) fn minimize(basis: Vec<Elem>) -> Vec<Elem> {
    let mut keep = alloc::vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (a, b) = (&basis[j], &basis[i]);
            if a.comp == b.comp && a.lm.divides(&b.lm) && (a.lm != b.lm || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
}

/// Interreduces tails of a minimal Gröbner basis (global orderings only).
pub(crate) fn tail_reduce(
    basis: Vec<Elem>,
    ord: &MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<Vec<Elem>> {
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut v = basis[i].v.clone();
        let lead = v.terms.remove(0);
        let others: Vec<Elem> =
            basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let tail = full_nf(v, &others, ord, budget)?;
        let mut terms = alloc::vec![lead];
        terms.extend(tail.terms);
        out.push(Elem::new(Vector { terms }));
    }
    Ok(out)
}

/// Every S-vector has normal form zero.
pub(crate) fn buchberger_complete(
    basis: &[Elem],
    ord: &MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].comp != basis[j].comp {
                continue;
            }
            let s = s_vector(&basis[i], &basis[j], ord);
            if !mora_nf(s, basis, ord, budget)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

//! Schreyer's free resolution and its minimization over the local ring.
//!
//! Level `k+1` of the frame is spanned by the syzygies `σ_ij` obtained from
//! reducing S-pairs of level `k` to zero. Under the ordering induced by the
//! leading terms of level `k` these already form a standard basis, so no
//! further Buchberger completion is needed. Elements are sorted so that the
//! frame has length at most the number of variables.

use alloc::vec::Vec;
use core::cmp::Ordering;

use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::budget::Budget;
use super::compute_basis;
use super::module::{Submodule, TermVector};
use super::resolution::Resolution;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::monomial::{ModuleExtension, Monomial, MonomialOrdering};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::{matrix_rank, Scalar};

/// Where a basis element of a frame level lands in `F_0`, plus the chain of
/// indices that breaks ties between equal images.
#[derive(Clone, Debug)]
struct Sig {
    mon: Monomial,
    comp0: usize,
    path: Vec<u32>,
}

#[derive(Clone, Debug)]
struct STerm {
    comp: usize,
    mon: Monomial,
    /// `mon` times the signature monomial of `comp`.
    image: Monomial,
    coeff: Scalar,
}

/// Basis of one free module of the frame with its induced ordering.
struct Level {
    base: MonomialOrdering,
    sigs: Vec<Sig>,
}

impl Level {
    fn cmp(&self, a: &STerm, b: &STerm) -> Ordering {
        let (sa, sb) = (&self.sigs[a.comp], &self.sigs[b.comp]);
        self.base
            .cmp_term(sa.comp0, &a.image, sb.comp0, &b.image)
            .then_with(|| sb.path.cmp(&sa.path))
    }

    fn term(&self, comp: usize, mon: Monomial, coeff: Scalar) -> STerm {
        let image = mon.mul(&self.sigs[comp].mon);
        STerm { comp, mon, image, coeff }
    }

    /// Sorts and merges equal terms.
    fn normalize(&self, mut terms: Vec<STerm>) -> Vec<STerm> {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vec<STerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mon == t.mon => last.coeff += &t.coeff,
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.coeff.is_zero()) {
                out.pop();
            }
        }
        out
    }

    /// `a - c·m·b`.
    fn sub_mul(&self, a: &[STerm], c: &Scalar, m: &Monomial, b: &[STerm]) -> Vec<STerm> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut x = a.iter().peekable();
        let mut y = b
            .iter()
            .map(|t| STerm {
                comp: t.comp,
                mon: t.mon.mul(m),
                image: t.image.mul(m),
                coeff: -(c * &t.coeff),
            })
            .peekable();
        loop {
            let o = match (x.peek(), y.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(p), Some(q)) => self.cmp(p, q),
            };
            match o {
                Ordering::Greater => out.push(x.next().expect("peeked").clone()),
                Ordering::Less => out.push(y.next().expect("peeked")),
                Ordering::Equal => {
                    let p = x.next().expect("peeked");
                    let q = y.next().expect("peeked");
                    let coeff = &p.coeff + &q.coeff;
                    if !coeff.is_zero() {
                        out.push(STerm { coeff, ..q });
                    }
                }
            }
        }
        out
    }
}

fn make_monic(v: &mut [STerm]) {
    let inv = v[0].coeff.inv().expect("nonzero leading coefficient");
    for t in v.iter_mut() {
        t.coeff *= &inv;
    }
}

/// Exponent-wise lexicographic comparison, `x_1` most significant.
fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().cmp(b.exponents())
}

/// Orders a level by leading component, then lexicographically decreasing
/// leading monomial. This is the arrangement that bounds the frame length.
fn arrange(elems: &mut [Vec<STerm>]) {
    elems.sort_by(|a, b| a[0].comp.cmp(&b[0].comp).then_with(|| lex(&b[0].mon, &a[0].mon)));
}

/// Syzygies of a standard basis `g` (monic, arranged) living in `lower`,
/// as monic elements of the level spanned by `g`.
fn next_level(
    g: &[Vec<STerm>],
    lower: &Level,
    upper: &Level,
    budget: &Budget<'_>,
) -> Result<Vec<Vec<STerm>>> {
    let nvars = g.first().map_or(0, |v| v[0].mon.nvars());
    let mut out = Vec::new();
    for i in 0..g.len() {
        let (ci, li) = (g[i][0].comp, &g[i][0].mon);
        // Minimal generators of ⟨lt_j : j > i⟩ : lt_i within the component.
        let mut cands: Vec<(usize, Monomial)> = (i + 1..g.len())
            .filter(|&j| g[j][0].comp == ci)
            .map(|j| (j, li.quotient_of(&li.lcm(&g[j][0].mon)).expect("lcm")))
            .collect();
        cands.sort_by(|a, b| a.1.degree().cmp(&b.1.degree()).then(a.0.cmp(&b.0)));
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (j, m) in cands {
            if !kept.iter().any(|(_, k)| k.divides(&m)) {
                kept.push((j, m));
            }
        }
        for (j, mi) in kept {
            let mj = g[j][0].mon.quotient_of(&li.lcm(&g[j][0].mon)).expect("lcm");
            let mut quot = alloc::vec![
                upper.term(i, mi.clone(), Scalar::one()),
                upper.term(j, mj.clone(), -Scalar::one()),
            ];
            let mut s = lower.sub_mul(&lower.sub_mul(&[], &-Scalar::one(), &mi, &g[i]), &Scalar::one(), &mj, &g[j]);
            while let Some(t) = s.first() {
                budget.tick()?;
                let l = (0..g.len())
                    .find(|&l| g[l][0].comp == t.comp && g[l][0].mon.divides(&t.mon))
                    .ok_or_else(|| Error::Shape("Schreyer reduction found no reducer".into()))?;
                let q = g[l][0].mon.quotient_of(&t.mon).expect("divisible");
                let c = t.coeff.clone();
                quot.push(upper.term(l, q.clone(), -c.clone()));
                s = lower.sub_mul(&s, &c, &q, &g[l]);
            }
            let mut sigma = upper.normalize(quot);
            debug_assert!(sigma[0].comp == i && sigma[0].mon == mi);
            make_monic(&mut sigma);
            out.push(sigma);
        }
    }
    debug!("Schreyer level in {nvars} variables: {} -> {} elements", g.len(), out.len());
    Ok(out)
}

fn level_over(lower: &Level, g: &[Vec<STerm>]) -> Level {
    let sigs = g
        .iter()
        .enumerate()
        .map(|(l, v)| {
            let s = &lower.sigs[v[0].comp];
            let mut path = s.path.clone();
            path.push(l as u32);
            Sig { mon: v[0].image.clone(), comp0: s.comp0, path }
        })
        .collect();
    Level { base: lower.base, sigs }
}

fn to_term_vector(ring: &Ring, rank: usize, v: &[STerm]) -> Result<TermVector> {
    let mut buckets: Vec<Vec<(Monomial, Scalar)>> = (0..rank).map(|_| Vec::new()).collect();
    for t in v {
        buckets[t.comp].push((t.mon.clone(), t.coeff.clone()));
    }
    let comps = buckets
        .into_iter()
        .map(|b| Polynomial::from_terms(ring, b))
        .collect::<Result<Vec<_>>>()?;
    TermVector::new(comps)
}

/// Schreyer's free resolution of `R^r / M` over the polynomial ring. It stays
/// exact after localizing at the origin, but is usually far from minimal there.
pub fn schreyer_resolution(m: &Submodule, budget: &Budget<'_>) -> Result<Resolution> {
    let ring = m.ring().clone();
    let r = m.rank();
    let ord = MonomialOrdering::global().with_module(ModuleExtension::TermOverPosition);
    let gens: Vec<Vector> = m
        .generators()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Vector::from_components(g.components(), &ord))
        .collect();
    let basis = if gens.is_empty() { Vec::new() } else { compute_basis(gens, &ord, false, budget)? };

    let mut lower = Level {
        base: ord,
        sigs: (0..r)
            .map(|c| Sig { mon: Monomial::one(ring.nvars()), comp0: c, path: Vec::new() })
            .collect(),
    };
    let mut g: Vec<Vec<STerm>> = basis
        .into_iter()
        .map(|e| {
            let mut v: Vec<STerm> =
                e.v.terms.into_iter().map(|t| lower.term(t.comp, t.mon, t.coeff)).collect();
            make_monic(&mut v);
            v
        })
        .collect();
    arrange(&mut g);

    let mut maps = Vec::new();
    let mut ranks = alloc::vec![r];
    while !g.is_empty() {
        if maps.len() > ring.nvars() {
            return Err(Error::Shape("resolution longer than the number of variables".into()));
        }
        let rank = *ranks.last().expect("nonempty");
        maps.push(g.iter().map(|v| to_term_vector(&ring, rank, v)).collect::<Result<Vec<_>>>()?);
        ranks.push(g.len());
        let upper = level_over(&lower, &g);
        let mut next = next_level(&g, &lower, &upper, budget)?;
        arrange(&mut next);
        lower = upper;
        g = next;
    }
    Ok(Resolution { maps, ranks, minimal: false })
}

/// Ranks of the constant parts of the maps of a resolution; their differences
/// give the local Betti numbers.
pub fn local_betti_numbers(res: &Resolution) -> Vec<usize> {
    let const_rank: Vec<usize> = res
        .maps
        .iter()
        .map(|cols| {
            let rows: Vec<Vec<Scalar>> = cols
                .iter()
                .map(|c| c.components().iter().map(Polynomial::constant_coeff).collect())
                .collect();
            matrix_rank(&rows)
        })
        .collect();
    (0..res.ranks.len())
        .map(|k| {
            let into = if k > 0 { const_rank[k - 1] } else { 0 };
            let out = const_rank.get(k).copied().unwrap_or(0);
            res.ranks[k] - into - out
        })
        .collect()
}

/// Cancels unit entries across the whole complex until none remain.
///
/// A unit `u` at row `i`, column `j` of `d_k` splits off a trivial summand:
/// every other column `c` of `d_k` becomes `u·c − c_i·c_j`, then column `j`
/// and row `i` go, together with row `j` of `d_{k+1}` and column `i` of `d_{k-1}`.
pub(crate) fn minimize(res: Resolution, budget: &Budget<'_>) -> Result<Resolution> {
    let Resolution { mut maps, mut ranks, .. } = res;
    while let Some((k, j, i)) = find_unit(&maps) {
        let pivot = maps[k].remove(j);
        let u = pivot.component(i).clone();
        for c in maps[k].iter_mut() {
            budget.tick()?;
            let ci = c.component(i).clone();
            let updated = if ci.is_zero() {
                c.mul_poly(&u)
            } else {
                c.mul_poly(&u).and_then(|a| a.try_sub(&pivot.mul_poly(&ci)?))
            };
            *c = updated.expect("shared ring and rank").without_component(i);
        }
        make_primitive(&mut maps[k]);
        if let Some(up) = maps.get_mut(k + 1) {
            for c in up.iter_mut() {
                *c = c.without_component(j);
            }
        }
        if k > 0 {
            maps[k - 1].remove(i);
        }
        ranks[k] -= 1;
        ranks[k + 1] -= 1;
    }
    while maps.last().is_some_and(Vec::is_empty) {
        maps.pop();
        ranks.pop();
    }
    Ok(Resolution { maps, ranks, minimal: true })
}

/// Scales a whole map to integer coefficients without common factor, which
/// keeps the complex intact. Repeated cancellations otherwise blow up the
/// rationals.
fn make_primitive(cols: &mut [TermVector]) {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for p in cols.iter().flat_map(TermVector::components) {
        for (_, c) in p.terms() {
            num = num.gcd(&c.numer());
            den = den.lcm(&c.denom());
        }
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return;
    }
    let s = Scalar::from_big(BigRational::new(den, num));
    for c in cols.iter_mut() {
        *c = TermVector::new(c.components().iter().map(|p| p.scale(&s)).collect()).expect("same rank");
    }
}

/// The unit entry `(level, column, row)` to cancel next: constants first, as
/// they never raise degrees, then the one touching the fewest other columns.
fn find_unit(maps: &[Vec<TermVector>]) -> Option<(usize, usize, usize)> {
    let mut best: Option<((bool, usize, usize), (usize, usize, usize))> = None;
    for (k, cols) in maps.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            for (i, p) in c.components().iter().enumerate() {
                if !p.is_local_unit() {
                    continue;
                }
                let fill = cols.iter().filter(|d| !d.component(i).is_zero()).count();
                let weight = c.components().iter().map(Polynomial::nterms).sum();
                let key = (!p.is_constant(), weight, fill);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, (k, j, i)));
                }
            }
        }
    }
    best.map(|b| b.1)
}

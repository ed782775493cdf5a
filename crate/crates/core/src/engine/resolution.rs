//! Syzygies by the extended-basis construction, and minimal free resolutions
//! over the local ring obtained by pruning unit entries.

use alloc::vec::Vec;

use log::debug;

use super::budget::Budget;
use super::module::{Submodule, TermVector};
use super::vector::Vector;
use super::compute_basis;
use super::schreyer::{local_betti_numbers, minimize, schreyer_resolution};
use crate::error::{Error, Result};
use crate::monomial::{ModuleExtension, MonomialOrdering};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Generators of `{(a_1..a_m) : Σ a_i g_i = 0}`.
///
/// Each `g_i ∈ R^r` is extended to `(g_i, e_i) ∈ R^{r+m}` and a standard basis
/// is computed under an ordering in which the first `r` components dominate;
/// basis elements vanishing there carry the syzygies.
///
/// The computation always runs under the global ordering: the local ring is
/// flat over the polynomial ring, so polynomial syzygies also generate the
/// syzygies over the local ring, and global reductions avoid the unbounded
/// tails of Mora's normal form.
pub fn syzygy_module(
    g: &[TermVector],
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<Submodule> {
    let Some(first) = g.first() else {
        return Err(Error::Shape("syzygies of an empty generator list".into()));
    };
    let (ring, r) = (first.ring().clone(), first.rank());
    for v in g {
        if v.rank() != r {
            return Err(Error::RankMismatch { expected: r, found: v.rank() });
        }
        if !same_ring(v.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
    }
    let gens = syzygies(g, &ring, ord, budget)?;
    Submodule::new(&ring, g.len(), gens)
}

fn syzygies(
    g: &[TermVector],
    ring: &Ring,
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<Vec<TermVector>> {
    let r = g[0].rank();
    let m = g.len();
    let base = if ord.is_local() { MonomialOrdering::global() } else { ord };
    let ext = base.with_module(ModuleExtension::BlockTermOverPosition { split: r });
    let gens: Vec<Vector> = g
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut comps: Vec<Polynomial> = v.components().to_vec();
            for j in 0..m {
                comps.push(if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) });
            }
            Vector::from_components(&comps, &ext)
        })
        .collect();
    let basis = compute_basis(gens, &ext, false, budget)?;
    let out: Vec<TermVector> = basis
        .iter()
        .filter(|e| e.comp >= r)
        .map(|e| TermVector::new(e.v.tail_components(r).to_components(ring, m)))
        .collect::<Result<_>>()?;
    debug!("syzygies of {m} generators in rank {r}: {} generators", out.len());
    Ok(out)
}

/// A free resolution `… → F_2 → F_1 → F_0` of `R^r / M`.
///
/// `maps[k]` holds the columns of `F_{k+1} → F_k`; `ranks[k]` is the rank of `F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub maps: Vec<Vec<TermVector>>,
    pub ranks: Vec<usize>,
    pub minimal: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Projective dimension of the resolved module (for a minimal resolution).
    pub fn projective_dimension(&self) -> usize {
        self.maps.len()
    }

    /// No matrix entry is a unit of the local ring.
    pub fn has_unit_entries(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .any(|c| c.components().iter().any(Polynomial::is_local_unit))
    }

    /// Checks that consecutive maps compose to zero.
    pub fn composes_to_zero(&self) -> bool {
        for k in 1..self.maps.len() {
            let (upper, lower) = (&self.maps[k - 1], &self.maps[k]);
            for col in lower {
                let mut acc = TermVector::zero(upper[0].ring(), upper[0].rank());
                for (a, g) in col.components().iter().zip(upper) {
                    acc = acc.try_add(&g.mul_poly(a).expect("shared ring")).expect("shared rank");
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Minimal free resolution of `R^r / M` over the local ring at the origin:
/// Schreyer's resolution with its unit entries cancelled.
pub fn minimal_free_resolution(
    m: &Submodule,
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<Resolution> {
    if !ord.is_local() {
        return Err(Error::NeedsLocalOrdering);
    }
    let res = minimize(schreyer_resolution(m, budget)?, budget)?;
    if res.ranks[0] == 0 {
        return Err(Error::ZeroModule);
    }
    debug_assert!(!res.has_unit_entries());
    Ok(res)
}

/// `depth(R^r / M) = n − pd(R^r / M)` by Auslander–Buchsbaum. The projective
/// dimension is read off the local Betti numbers of Schreyer's resolution,
/// which avoids minimizing it.
pub fn depth(m: &Submodule, ord: MonomialOrdering, budget: &Budget<'_>) -> Result<u32> {
    if !ord.is_local() {
        return Err(Error::NeedsLocalOrdering);
    }
    let betti = local_betti_numbers(&schreyer_resolution(m, budget)?);
    let pd = betti.iter().rposition(|&b| b > 0).ok_or(Error::ZeroModule)?;
    Ok((m.ring().nvars() - pd) as u32)
}

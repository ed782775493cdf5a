//! Standard bases over ℚ for global and local orderings, and the module
//! computations built on them: normal forms, colength, dimension, syzygies,
//! minimal free resolutions and depth.

mod budget;
mod module;
mod quotient;
mod resolution;
mod schreyer;
mod standard;
mod vector;

use alloc::vec::Vec;

pub use budget::Budget;
pub use module::{Submodule, TermVector};
pub use resolution::{depth, minimal_free_resolution, syzygy_module, Resolution};
pub use schreyer::{local_betti_numbers, schreyer_resolution};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrdering, OrderKind};
use crate::ring::{same_ring, Ring};
use crate::value::Value;
use standard::{buchberger_complete, full_nf, minimize, mora_nf, tail_reduce, Buchberger, Elem};
use log::debug;
use quotient::monomials_up_to;
use vector::Vector;

/// A standard basis (Gröbner basis for global orderings) of a submodule.
#[derive(Clone, Debug)]
pub struct StandardBasisResult {
    ring: Ring,
    rank: usize,
    ordering: MonomialOrdering,
    elems: Vec<Elem>,
}

impl StandardBasisResult {
    pub fn ordering(&self) -> MonomialOrdering {
        self.ordering
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn basis(&self) -> Vec<TermVector> {
        self.elems
            .iter()
            .map(|e| {
                TermVector::new(e.v.to_components(&self.ring, self.rank)).expect("rank >= 1")
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Minimal generators of the leading module as `(component, monomial)`.
    pub fn leading_module(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|e| (e.comp, e.lm.clone())).collect()
    }

    /// Normal form of `v` (weak normal form for local orderings).
    pub fn reduce(&self, v: &TermVector, budget: &Budget<'_>) -> Result<TermVector> {
        self.check(v)?;
        let h = Vector::from_components(v.components(), &self.ordering);
        let r = if self.ordering.is_local() {
            mora_nf(h, &self.elems, &self.ordering, budget)?
        } else {
            full_nf(h, &self.elems, &self.ordering, budget)?
        };
        TermVector::new(r.to_components(&self.ring, self.rank))
    }

    pub fn contains(&self, v: &TermVector, budget: &Budget<'_>) -> Result<bool> {
        self.check(v)?;
        let h = Vector::from_components(v.components(), &self.ordering);
        Ok(mora_nf(h, &self.elems, &self.ordering, budget)?.is_zero())
    }

    /// Number of `(component, monomial)` pairs outside the leading module.
    /// Under a local ordering this is the colength of the localized module.
    pub fn standard_monomial_count(&self) -> Value {
        quotient::count_standard_monomials(&self.leading_module(), self.rank, self.ring.nvars())
    }

    /// Krull dimension of the quotient, from the leading module.
    pub fn quotient_dimension(&self) -> Option<u32> {
        quotient::krull_dimension(&self.leading_module(), self.rank, self.ring.nvars())
    }

    /// Re-checks Buchberger's criterion: every S-vector reduces to zero.
    pub fn is_buchberger_complete(&self, budget: &Budget<'_>) -> Result<bool> {
        buchberger_complete(&self.elems, &self.ordering, budget)
    }

    fn check(&self, v: &TermVector) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: v.rank() });
        }
        if !same_ring(v.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

fn to_vectors(gens: &[TermVector], ord: &MonomialOrdering) -> Vec<Vector> {
    gens.iter().map(|g| Vector::from_components(g.components(), ord)).collect()
}

pub(crate) fn compute_basis(
    gens: Vec<Vector>,
    ord: &MonomialOrdering,
    ideal_case: bool,
    budget: &Budget<'_>,
) -> Result<Vec<Elem>> {
    if ord.is_local() {
        return lazard_basis(gens, ord, ideal_case, budget);
    }
    let elems = Buchberger::new(ord, ideal_case).run(gens, budget)?;
    tail_reduce(elems, ord, budget)
}

/// Lazard's method: a Gröbner basis of the homogenized generators under
/// [`OrderKind::HomogenizedLocal`] dehomogenizes to a local standard basis.
/// Homogeneous reduction never raises degrees, whereas Mora's normal form can
/// crawl upwards for a long time on positive-dimensional inputs.
fn lazard_basis(
    gens: Vec<Vector>,
    ord: &MonomialOrdering,
    ideal_case: bool,
    budget: &Budget<'_>,
) -> Result<Vec<Elem>> {
    let hord = MonomialOrdering { kind: OrderKind::HomogenizedLocal, module: ord.module };
    let hgens = gens.iter().map(|v| v.homogenize(&hord)).collect();
    let elems = Buchberger::new(&hord, ideal_case).run(hgens, budget)?;
    Ok(minimize(elems.iter().map(|e| Elem::new(e.v.dehomogenize(ord))).collect()))
}

/// Buchberger-complete standard basis of `m` under `ord`.
pub fn standard_basis(
    m: &Submodule,
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<StandardBasisResult> {
    let elems = compute_basis(to_vectors(m.generators(), &ord), &ord, m.rank() == 1, budget)?;
    Ok(StandardBasisResult { ring: m.ring().clone(), rank: m.rank(), ordering: ord, elems })
}

/// Reduces `v` by the given reducers; they need not form a standard basis.
pub fn normal_form(
    v: &TermVector,
    g: &[TermVector],
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<TermVector> {
    if let Some(bad) = g.iter().find(|x| x.rank() != v.rank()) {
        return Err(Error::RankMismatch { expected: v.rank(), found: bad.rank() });
    }
    if g.iter().any(|x| !same_ring(x.ring(), v.ring())) {
        return Err(Error::RingMismatch);
    }
    let reducers: Vec<Elem> = to_vectors(g, &ord)
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(Elem::new)
        .collect();
    let h = Vector::from_components(v.components(), &ord);
    let r = if ord.is_local() {
        mora_nf(h, &reducers, &ord, budget)?
    } else {
        full_nf(h, &reducers, &ord, budget)?
    };
    TermVector::new(r.to_components(v.ring(), v.rank()))
}

/// `dim_ℚ R^r / M` in the local ring at the origin, or over the whole
/// polynomial ring for a global ordering.
///
/// Locally this is computed modulo `m^N` for growing `N` until some degree
/// layer of standard monomials is empty.
pub fn colength(m: &Submodule, ord: MonomialOrdering, budget: &Budget<'_>) -> Result<Value> {
    if !ord.is_local() {
        return Ok(standard_basis(m, ord, budget)?.standard_monomial_count());
    }
    let gens = to_vectors(m.generators(), &ord);
    let (nvars, rank) = (m.ring().nvars(), m.rank());
    let mut n: u32 = 8;
    while monomials_up_to(nvars, n).saturating_mul(rank as u128) <= TRUNCATION_LIMIT {
        let elems = Buchberger::new(&ord, rank == 1).truncated(n + 1).run(gens.clone(), budget)?;
        let leading: Vec<(usize, Monomial)> = elems.iter().map(|e| (e.comp, e.lm.clone())).collect();
        let layers = quotient::standard_monomials_by_degree(&leading, rank, nvars, n);
        // An empty layer in degree d means m^d ⊆ M + m^{d+1}, so m^d ⊆ M by Nakayama.
        if let Some(d) = layers.iter().position(|&c| c == 0) {
            return Ok(Value::Finite(layers[..d].iter().sum::<u64>() as i64));
        }
        debug!("colength not yet determined modulo m^{}", n + 1);
        n *= 2;
    }
    Ok(standard_basis(m, ord, budget)?.standard_monomial_count())
}

/// Past this many monomials the truncated computation gives way to an
/// untruncated standard basis, which also certifies infinite colength.
const TRUNCATION_LIMIT: u128 = 200_000;

/// Krull dimension of `R^r / M` (localized at the origin for local orderings).
/// The zero quotient is reported as [`Error::ZeroModule`].
pub fn krull_dimension(m: &Submodule, ord: MonomialOrdering, budget: &Budget<'_>) -> Result<u32> {
    standard_basis(m, ord, budget)?.quotient_dimension().ok_or(Error::ZeroModule)
}

pub fn module_membership(
    v: &TermVector,
    m: &Submodule,
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<bool> {
    if v.rank() != m.rank() {
        return Err(Error::RankMismatch { expected: m.rank(), found: v.rank() });
    }
    standard_basis(m, ord, budget)?.contains(v, budget)
}

/// Mutual containment of generators.
pub fn module_equality(
    a: &Submodule,
    b: &Submodule,
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<bool> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(module_contains(a, b, ord, budget)? && module_contains(b, a, ord, budget)?)
}

/// Whether every generator of `inner` lies in `outer`.
pub fn module_contains(
    outer: &Submodule,
    inner: &Submodule,
    ord: MonomialOrdering,
    budget: &Budget<'_>,
) -> Result<bool> {
    let sb = standard_basis(outer, ord, budget)?;
    for g in inner.generators() {
        if !sb.contains(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Logarithmic vector fields of a germ, the ideal `df(Θ_X)`, and the
//! relative logarithmic characteristic ideal in the cotangent ring.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diff::MapGerm;
use crate::engine::{depth, krull_dimension, syzygy_module, Budget, Submodule, TermVector};
use crate::error::{Error, Result};
use crate::monomial::MonomialOrdering;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingContext};

/// A germ `(X,0) ⊂ (ℂⁿ,0)` given by generators of its (reduced) ideal.
/// No generators means `X = ℂⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyGerm {
    ring: Ring,
    generators: Vec<Polynomial>,
    pub icis_claimed: bool,
}

impl VarietyGerm {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.vanishes_at_origin() {
                return Err(Error::NotAtOrigin(format!("{g}")));
            }
        }
        Ok(VarietyGerm { ring: ring.clone(), generators, icis_claimed: true })
    }

    pub fn smooth(ring: &Ring) -> Self {
        VarietyGerm { ring: ring.clone(), generators: Vec::new(), icis_claimed: true }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Dimension assuming the generators form a complete intersection.
    pub fn dim(&self) -> usize {
        self.ring.nvars().saturating_sub(self.generators.len())
    }

    pub fn ideal(&self) -> Submodule {
        Submodule::ideal(&self.ring, self.generators.clone()).expect("validated ring")
    }

    /// `φ` as a map germ.
    pub fn as_map(&self) -> MapGerm {
        MapGerm::new(&self.ring, self.generators.clone()).expect("validated at construction")
    }

    /// `X ∩ g⁻¹(0)`.
    pub fn section(&self, g: &Polynomial) -> Result<VarietyGerm> {
        let mut generators = self.generators.clone();
        generators.push(g.clone());
        VarietyGerm::new(&self.ring, generators)
    }
}

/// Generators of `Θ_X` as vectors of rank `n` (coefficients of `∂/∂x_i`).
#[derive(Clone, Debug)]
pub struct TangentModule {
    module: Submodule,
}

impl TangentModule {
    pub fn generators(&self) -> &[TermVector] {
        self.module.generators()
    }

    pub fn module(&self) -> &Submodule {
        &self.module
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    /// Wraps explicitly given vector fields.
    pub fn from_generators(ring: &Ring, generators: Vec<TermVector>) -> Result<Self> {
        Ok(TangentModule { module: Submodule::new(ring, ring.nvars(), generators)? })
    }
}

/// The derivative of `h` along the field with components `field`.
pub fn derive(h: &Polynomial, field: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(h.ring());
    for (i, a) in field.iter().enumerate() {
        if !a.is_zero() {
            acc = &acc + &(a * &h.derivative(i).expect("index in range"));
        }
    }
    acc
}

/// `Θ_X = {ξ : dh(ξ) ∈ I_X for every generator h}` over the local ring.
///
/// With `h_1..h_k` generating `I_X`, these are the first `n` coordinates of the
/// syzygies among the columns `(∂h_1/∂x_i, …, ∂h_k/∂x_i)` and `h_m·e_l`.
pub fn tangent_module(x: &VarietyGerm, budget: &Budget<'_>) -> Result<TangentModule> {
    let ring = x.ring();
    let n = ring.nvars();
    let k = x.generators.len();
    if k == 0 {
        let fields = (0..n).map(|i| TermVector::unit(ring, n, i, Polynomial::one(ring))).collect();
        return TangentModule::from_generators(ring, fields);
    }
    let mut cols: Vec<TermVector> = (0..n)
        .map(|i| {
            TermVector::new(
                x.generators.iter().map(|h| h.derivative(i).expect("index in range")).collect(),
            )
        })
        .collect::<Result<_>>()?;
    for l in 0..k {
        for h in &x.generators {
            cols.push(TermVector::unit(ring, k, l, h.clone()));
        }
    }
    let syz = syzygy_module(&cols, MonomialOrdering::local(), budget)?;
    let mut fields: Vec<TermVector> = Vec::new();
    for s in syz.generators() {
        let head = TermVector::new(s.components()[..n].to_vec())?;
        if !head.is_zero() && !fields.contains(&head) {
            fields.push(head);
        }
    }
    TangentModule::from_generators(ring, fields)
}

/// `⟨df(δ) : δ ∈ Θ_X⟩`.
pub fn df_of_theta(f: &Polynomial, t: &TangentModule) -> Result<Submodule> {
    if !same_ring(f.ring(), t.ring()) {
        return Err(Error::RingMismatch);
    }
    let gens = t.generators().iter().map(|d| derive(f, d.components())).collect();
    Submodule::ideal(t.ring(), gens)
}

/// `I⁻` in the cotangent ring `x_1..x_n, p_1..p_n`.
#[derive(Clone, Debug)]
pub struct LcvMinusIdeal {
    pub cotangent_ring: Ring,
    pub generators: Vec<Polynomial>,
}

impl LcvMinusIdeal {
    pub fn ideal(&self) -> Submodule {
        Submodule::ideal(&self.cotangent_ring, self.generators.clone()).expect("shared ring")
    }
}

/// Names `p1..pn`, with underscores appended if they clash with the base ring.
fn momentum_names(ring: &RingContext) -> Vec<String> {
    let mut suffix = String::new();
    loop {
        let names: Vec<String> =
            (1..=ring.nvars()).map(|i| format!("p{i}{suffix}")).collect();
        if names.iter().all(|n| ring.index_of(n).is_none()) {
            return names;
        }
        suffix.push('_');
    }
}

/// The cotangent ring of `ring`: its variables followed by `p1..pn`.
pub fn cotangent_ring(ring: &Ring) -> Ring {
    let p = momentum_names(ring);
    RingContext::new(ring.names().iter().map(String::as_str).chain(p.iter().map(String::as_str)))
        .expect("fresh names")
}

/// `⟨Σ_i δ_i p_i : δ ∈ Θ_X⟩ + I_X`.
pub fn lcv_minus_ideal(x: &VarietyGerm, t: &TangentModule) -> Result<LcvMinusIdeal> {
    if !same_ring(x.ring(), t.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = cotangent_ring(x.ring());
    let n = x.ring().nvars();
    let mut generators = Vec::new();
    for d in t.generators() {
        let mut acc = Polynomial::zero(&ring);
        for (i, a) in d.components().iter().enumerate() {
            if !a.is_zero() {
                let p = Polynomial::var(&ring, n + i)?;
                acc = &acc + &(&a.embed(&ring)? * &p);
            }
        }
        if !acc.is_zero() {
            generators.push(acc);
        }
    }
    for g in x.generators() {
        generators.push(g.embed(&ring)?);
    }
    Ok(LcvMinusIdeal { cotangent_ring: ring, generators })
}

/// Dimension and depth of the cotangent quotient.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CmReport {
    pub dim: u32,
    pub depth: u32,
    pub is_cm: bool,
    /// Where the local ring is taken; always the origin of the cotangent space.
    pub base_point: &'static str,
}

/// Cohen–Macaulay test of `O/I⁻` localized at the origin of the cotangent space.
pub fn cohen_macaulay_report(l: &LcvMinusIdeal, budget: &Budget<'_>) -> Result<CmReport> {
    let ideal = l.ideal();
    let ord = MonomialOrdering::local();
    let dim = krull_dimension(&ideal, ord, budget)?;
    let depth = depth(&ideal, ord, budget)?;
    Ok(CmReport { dim, depth, is_cm: dim == depth, base_point: "origin" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{colength, module_equality, module_membership};
    use crate::parse::parse_polynomial;
    use crate::value::Value;
    use alloc::vec;

    fn ring(names: &[&str]) -> Ring {
        RingContext::new(names.iter().copied()).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn tv(r: &Ring, comps: &[&str]) -> TermVector {
        TermVector::new(comps.iter().map(|c| p(r, c)).collect()).unwrap()
    }

    fn germ(r: &Ring, gens: &[&str]) -> VarietyGerm {
        VarietyGerm::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
    }

    const L: MonomialOrdering = MonomialOrdering::local();

    #[test]
    fn coordinate_hyperplane_and_cross() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        let t = tangent_module(&germ(&r, &["x"]), &b).unwrap();
        let expected = Submodule::new(&r, 2, vec![tv(&r, &["x", "0"]), tv(&r, &["0", "1"])]).unwrap();
        assert!(module_equality(t.module(), &expected, L, &b).unwrap());

        let t = tangent_module(&germ(&r, &["x*y"]), &b).unwrap();
        let expected = Submodule::new(&r, 2, vec![tv(&r, &["x", "0"]), tv(&r, &["0", "y"])]).unwrap();
        assert!(module_equality(t.module(), &expected, L, &b).unwrap());
    }

    #[test]
    fn fields_are_tangent() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y", "z"]);
        let x = germ(&r, &["x^3 + x^2*y^2 + y^7 + z^2"]);
        let t = tangent_module(&x, &b).unwrap();
        for d in t.generators() {
            for h in x.generators() {
                let dh = TermVector::from_poly(derive(h, d.components()));
                assert!(module_membership(&dh, &x.ideal(), L, &b).unwrap());
            }
        }
        for i in 0..3 {
            let field = TermVector::unit(&r, 3, i, x.generators()[0].clone());
            assert!(module_membership(&field, t.module(), L, &b).unwrap());
        }
    }

    #[test]
    fn df_examples() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        let cross = tangent_module(&germ(&r, &["x*y"]), &b).unwrap();
        let got = df_of_theta(&p(&r, "x + y"), &cross).unwrap();
        let xy = Submodule::ideal(&r, vec![p(&r, "x"), p(&r, "y")]).unwrap();
        assert!(module_equality(&got, &xy, L, &b).unwrap());

        let line = germ(&r, &["x"]);
        let t = tangent_module(&line, &b).unwrap();
        let got = df_of_theta(&p(&r, "x^2 + y^2"), &t).unwrap();
        let hand = Submodule::ideal(&r, vec![p(&r, "2*x^2"), p(&r, "2*y")]).unwrap();
        assert!(module_equality(&got, &hand, L, &b).unwrap());
        assert_eq!(colength(&got.sum(&line.ideal()).unwrap(), L, &b).unwrap(), Value::Finite(1));

        let smooth = tangent_module(&VarietyGerm::smooth(&r), &b).unwrap();
        let got = df_of_theta(&p(&r, "3*x - y"), &smooth).unwrap();
        assert_eq!(colength(&got, L, &b).unwrap(), Value::Finite(0));
    }

    #[test]
    fn cotangent_ideal_of_a_point_on_a_line() {
        let b = Budget::unlimited();
        let r = ring(&["x"]);
        let x = germ(&r, &["x"]);
        let t = TangentModule::from_generators(&r, vec![tv(&r, &["x"])]).unwrap();
        let l = lcv_minus_ideal(&x, &t).unwrap();
        assert_eq!(l.cotangent_ring.names(), ["x", "p1"]);
        let cr = &l.cotangent_ring;
        assert_eq!(l.generators, vec![p(cr, "x*p1"), p(cr, "x")]);
        let rep = cohen_macaulay_report(&l, &b).unwrap();
        assert_eq!((rep.dim, rep.depth, rep.is_cm), (1, 1, true));
    }

    #[test]
    fn momentum_names_avoid_clashes() {
        let r = ring(&["p1", "y"]);
        assert_eq!(cotangent_ring(&r).names(), ["p1", "y", "p1_", "p2_"]);
    }
}

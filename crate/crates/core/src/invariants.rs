//! Milnor, Tjurina, Bruce–Roberts, Chern and cusp numbers as colengths, and
//! the identities relating them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use log::debug;
use sha2::{Digest, Sha256};

use crate::diff::{
    beta_generators, certify_generic, jacobian_matrix, minors, random_linear_collection,
    suspension_build, trial_seeds, CollectionShape, MapGerm, OneFormCollection,
};
use crate::engine::{colength, Budget, Submodule, TermVector};
use crate::error::{Error, Result};
use crate::logarithmic::{df_of_theta, tangent_module, VarietyGerm};
use crate::monomial::MonomialOrdering;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};
use crate::scalar::Scalar;
use crate::value::Value;

/// Default number of random draws used to certify a generic linear object.
pub const DEFAULT_TRIALS: usize = 3;

fn local_colength(ideal: &Submodule, budget: &Budget<'_>) -> Result<Value> {
    colength(ideal, MonomialOrdering::local(), budget)
}

fn check_ring(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `μ(f) = dim O_n / J(f)`.
pub fn milnor_hypersurface(f: &Polynomial, budget: &Budget<'_>) -> Result<Value> {
    if !f.vanishes_at_origin() {
        return Err(Error::NotAtOrigin(format!("{f}")));
    }
    local_colength(&Submodule::ideal(f.ring(), f.gradient())?, budget)
}

/// `dim O_n / (⟨φ⟩ + maximal minors of d(φ, g))`, which is `μ(X) + μ(X ∩ g⁻¹(0))`
/// when both are ICIS.
pub fn le_greuel_colength(phi: &MapGerm, g: &Polynomial, budget: &Budget<'_>) -> Result<Value> {
    check_ring(phi.ring(), g.ring())?;
    let order = phi.len() + 1;
    let both = phi.stack(&MapGerm::new(phi.ring(), vec![g.clone()])?)?;
    let mut gens = phi.components().to_vec();
    gens.extend(minors(&jacobian_matrix(&both), order)?);
    local_colength(&Submodule::ideal(phi.ring(), gens)?, budget)
}

/// `μ(X)` for `X` cut out by `φ_1, …, φ_k`, through the chain
/// `μ(X_j) = colength(⟨φ_1..φ_{j−1}⟩ + minors of d(φ_1..φ_j)) − μ(X_{j−1})`,
/// where `X_j` is cut out by the first `j` generators. Every `X_j` has to be
/// an ICIS; an infinite link makes the result infinite.
pub fn milnor_icis(x: &VarietyGerm, budget: &Budget<'_>) -> Result<Value> {
    let gens = x.generators();
    let Some(first) = gens.first() else {
        return Ok(Value::Finite(0));
    };
    let mut mu = milnor_hypersurface(first, budget)?;
    for j in 1..gens.len() {
        let phi = MapGerm::new(x.ring(), gens[..j].to_vec())?;
        mu = match (le_greuel_colength(&phi, &gens[j], budget)?, mu) {
            (Value::Finite(both), Value::Finite(prev)) => Value::Finite(both - prev),
            _ => return Ok(Value::Infinite),
        };
    }
    Ok(mu)
}

/// `μ(f|_X) = dim O_n / (I_X + maximal minors of d(φ, f))`.
pub fn milnor_restricted(x: &VarietyGerm, f: &Polynomial, budget: &Budget<'_>) -> Result<Value> {
    le_greuel_colength(&x.as_map(), f, budget)
}

/// `τ(X) = dim O^k / (⟨∂φ/∂x_i⟩ + I_X·O^k)` for `X` cut out by `k` equations.
pub fn tjurina_icis(x: &VarietyGerm, budget: &Budget<'_>) -> Result<Value> {
    let ring = x.ring();
    let k = x.generators().len();
    if k == 0 {
        return Ok(Value::Finite(0));
    }
    let mut gens: Vec<TermVector> = (0..ring.nvars())
        .map(|i| {
            TermVector::new(x.generators().iter().map(|h| h.derivative(i).expect("in range")).collect())
        })
        .collect::<Result<_>>()?;
    let ix = Submodule::ideal_times_free(ring, x.generators(), k)?;
    gens.extend(ix.generators().iter().cloned());
    local_colength(&Submodule::new(ring, k, gens)?, budget)
}

/// `μ_BR(f, X) = dim O_n / df(Θ_X)`, or with `relative` the colength of `df(Θ_X) + I_X`.
pub fn bruce_roberts(
    f: &Polynomial,
    x: &VarietyGerm,
    relative: bool,
    budget: &Budget<'_>,
) -> Result<Value> {
    check_ring(f.ring(), x.ring())?;
    let theta = tangent_module(x, budget)?;
    let mut ideal = df_of_theta(f, &theta)?;
    if relative {
        ideal = ideal.sum(&x.ideal())?;
    }
    local_colength(&ideal, budget)
}

/// `μ⁻_BR(f, X)` assembled as `μ(X ∩ f⁻¹(0)) + μ(X) − τ(X)`.
pub fn br_minus_via_formula(x: &VarietyGerm, f: &Polynomial, budget: &Budget<'_>) -> Result<Value> {
    let lg = le_greuel_colength(&x.as_map(), f, budget)?.require("Lê–Greuel colength")?;
    let tau = tjurina_icis(x, budget)?.require("Tjurina number")?;
    Ok(Value::Finite(lg - tau))
}

/// Index of a collection of 1-forms on `X`: the colength of `I_X` plus, for
/// each subcollection `i`, the minors of order `n − k_i + 1` of `dφ` stacked
/// on the forms of that subcollection.
pub fn chern_index(x: &VarietyGerm, c: &OneFormCollection, budget: &Budget<'_>) -> Result<Value> {
    check_ring(x.ring(), c.ring())?;
    if c.shape().d != x.dim() {
        return Err(Error::Shape(format!(
            "collection built for dimension {} on a germ of dimension {}",
            c.shape().d,
            x.dim()
        )));
    }
    let n = x.ring().nvars();
    let dphi = jacobian_matrix(&x.as_map());
    let mut gens = x.generators().to_vec();
    for (i, &k) in c.shape().ks.iter().enumerate() {
        let m = dphi.stack(&c.matrix(i))?;
        gens.extend(minors(&m, n - k + 1)?);
    }
    local_colength(&Submodule::ideal(x.ring(), gens)?, budget)
}

/// How the generic linear collection subtracted in a Chern number is obtained.
#[derive(Clone, Debug)]
pub enum LinearReference {
    /// Seeded random draws, accepted when `trials` draws agree.
    Certified { seed: u64, trials: usize },
    /// A collection supplied by the caller, used as is on the germ it was
    /// written for; `seed` drives certification everywhere else.
    Explicit { collection: OneFormCollection, seed: u64 },
}

impl LinearReference {
    pub fn seeded(seed: u64) -> Self {
        LinearReference::Certified { seed, trials: DEFAULT_TRIALS }
    }

    fn seed_and_trials(&self) -> (u64, usize) {
        match self {
            LinearReference::Certified { seed, trials } => (*seed, *trials),
            LinearReference::Explicit { seed, .. } => (*seed, DEFAULT_TRIALS),
        }
    }

    /// Certified counterpart for germs other than the one the explicit collection was written for.
    fn certified(&self) -> LinearReference {
        let (seed, trials) = self.seed_and_trials();
        LinearReference::Certified { seed, trials }
    }

    fn describe(&self) -> String {
        match self {
            LinearReference::Certified { seed, trials } => {
                format!("generic linear collection certified by {trials} seeded draws from seed {seed}")
            }
            LinearReference::Explicit { .. } => "explicitly supplied linear collection (genericity assumed)".into(),
        }
    }
}

/// Index of the linear reference collection of the given shape on `x`.
pub fn linear_index(
    x: &VarietyGerm,
    shape: &CollectionShape,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> Result<i64> {
    match reference {
        LinearReference::Explicit { collection: c, .. } => {
            if c.shape() != shape {
                return Err(Error::Shape("explicit linear collection has the wrong shape".into()));
            }
            chern_index(x, c, budget)?.require("index of the linear collection")
        }
        LinearReference::Certified { seed, trials } => {
            Ok(certify_generic(x, shape, *seed, *trials, budget)?.index)
        }
    }
}

/// `Ch = ind(C) − ind(l)` for a generic linear collection `l` of the same shape.
pub fn chern_number(
    x: &VarietyGerm,
    c: &OneFormCollection,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> Result<Value> {
    let ind = chern_index(x, c, budget)?.require("index of the collection")?;
    let lin = linear_index(x, c.shape(), reference, budget)?;
    Ok(Value::Finite(ind - lin))
}

/// Chern number of `{dg}` on a germ of dimension `dim`.
fn chern_of_differential(
    y: &VarietyGerm,
    g: &Polynomial,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> Result<i64> {
    let c = OneFormCollection::of_differentials(y.ring(), y.dim(), &[vec![g.clone()]])?;
    chern_number(y, &c, reference, budget)?.require("Chern number")
}

fn linear_function(ring: &Ring, seed: u64) -> Polynomial {
    let shape = CollectionShape::new(1, vec![1]).expect("valid shape");
    let collection = random_linear_collection(ring, &shape, seed);
    let form = &collection.subcollections()[0][0];
    let mut acc = Polynomial::zero(ring);
    for (i, a) in form.iter().enumerate() {
        let x = Polynomial::var(ring, i).expect("in range");
        acc = &acc + &(&x * a);
    }
    acc
}

/// `μ⁻_BR(l, Y)` for a generic linear function `l`, certified over seeded draws.
pub fn generic_linear_br_minus(
    y: &VarietyGerm,
    seed: u64,
    trials: usize,
    budget: &Budget<'_>,
) -> Result<i64> {
    if trials < 2 {
        return Err(Error::Shape("genericity certification needs at least two trials".into()));
    }
    let mut values = Vec::with_capacity(trials);
    for s in trial_seeds(seed, trials) {
        values.push(bruce_roberts(&linear_function(y.ring(), s), y, true, budget)?);
    }
    match values[0] {
        Value::Finite(v) if values.iter().all(|w| *w == values[0]) => Ok(v),
        _ => {
            let listed: Vec<String> = values.iter().map(ToString::to_string).collect();
            Err(Error::CertificationFailed(format!(
                "relative Bruce–Roberts numbers of linear functions: {}",
                listed.join(", ")
            )))
        }
    }
}

/// `μ⁻_BR(f₁, X∩f₂⁻¹(0)) − μ⁻_BR(l, X∩f₂⁻¹(0))` for a generic linear `l`.
pub fn chern_df1_via_br(
    x: &VarietyGerm,
    f1: &Polynomial,
    f2: &Polynomial,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> Result<Value> {
    let y = x.section(f2)?;
    let br = bruce_roberts(f1, &y, true, budget)?.require("relative Bruce–Roberts number")?;
    let (seed, trials) = reference.seed_and_trials();
    Ok(Value::Finite(br - generic_linear_br_minus(&y, seed, trials, budget)?))
}

/// `c(f|_X) = dim O_n / (I_X + ⟨β_1, …, β_{n+1}⟩)`.
pub fn cusps_count(x: &VarietyGerm, f: &MapGerm, budget: &Budget<'_>) -> Result<Value> {
    if f.len() != 2 {
        return Err(Error::Shape(format!("cusps need a map to the plane, got {} components", f.len())));
    }
    let mut gens = x.generators().to_vec();
    gens.extend(beta_generators(&x.as_map(), f)?);
    local_colength(&Submodule::ideal(x.ring(), gens)?, budget)
}

/// The collections `η₁ = {{df₁, df₂}, {df₁, dΔ}}` and `η₂ = {{df₁, df₂}, {df₂, dΔ}}`.
pub fn eta_collections(x: &VarietyGerm, f: &MapGerm) -> Result<(OneFormCollection, OneFormCollection)> {
    let [f1, f2] = two_components(f)?;
    let delta = crate::diff::delta_determinant(&x.as_map(), f)?;
    let ring = x.ring();
    let eta1 = OneFormCollection::of_differentials(
        ring,
        2,
        &[vec![f1.clone(), f2.clone()], vec![f1.clone(), delta.clone()]],
    )?;
    let eta2 = OneFormCollection::of_differentials(
        ring,
        2,
        &[vec![f1.clone(), f2.clone()], vec![f2.clone(), delta]],
    )?;
    Ok((eta1, eta2))
}

fn two_components(f: &MapGerm) -> Result<[&Polynomial; 2]> {
    match f.components() {
        [a, b] => Ok([a, b]),
        other => Err(Error::Shape(format!("expected a map to the plane, got {} components", other.len()))),
    }
}

/// A computed invariant with its provenance.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub value: Option<Value>,
    pub route: String,
    pub inputs_digest: String,
    pub assumptions: Vec<String>,
    pub error: Option<String>,
    /// The failure behind `error`, for callers that branch on its kind.
    #[serde(skip)]
    pub cause: Option<Error>,
}

impl InvariantReport {
    pub fn new(
        name: &str,
        route: &str,
        inputs: &[String],
        assumptions: Vec<String>,
        result: Result<Value>,
    ) -> Self {
        let (value, cause) = match result {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e)),
        };
        InvariantReport {
            name: name.into(),
            value,
            route: route.into(),
            inputs_digest: inputs_digest(inputs),
            assumptions,
            error: cause.as_ref().map(ToString::to_string),
            cause,
        }
    }
}

/// Hex SHA-256 of the inputs, each terminated by a newline.
pub fn inputs_digest(inputs: &[String]) -> String {
    let mut h = Sha256::new();
    for s in inputs {
        h.update(s.as_bytes());
        h.update(b"\n");
    }
    let mut out = String::with_capacity(64);
    for b in h.finalize() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Canonical text of a germ and map, for digests.
pub fn describe_inputs(x: &VarietyGerm, f: &[Polynomial]) -> Vec<String> {
    let mut out = vec![format!("ring {}", x.ring().names().join(","))];
    out.extend(x.generators().iter().map(|g| format!("variety {g}")));
    out.extend(f.iter().map(|g| format!("map {g}")));
    out
}

/// `Eu_{f₁, X∩f₂⁻¹(0)}(0)`, computed as the Chern number of `{df₁}` on `X∩f₂⁻¹(0)`.
pub fn euler_obstruction_function(
    x: &VarietyGerm,
    f1: &Polynomial,
    f2: &Polynomial,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> InvariantReport {
    let result = x
        .section(f2)
        .and_then(|y| chern_of_differential(&y, f1, &reference.certified(), budget))
        .map(Value::Finite);
    let d = x.dim().saturating_sub(1);
    InvariantReport::new(
        "euler_obstruction_function",
        "Chern number of {df1} on X ∩ f2^-1(0) via minors",
        &describe_inputs(x, &[f1.clone(), f2.clone()]),
        vec![
            "f1 is tractable at the origin relative to a good stratification of X ∩ f2^-1(0) (not verified)".into(),
            "X, X ∩ f2^-1(0) and X ∩ f2^-1(0) ∩ f1^-1(0) are ICIS (not verified)".into(),
            reference.certified().describe(),
            format!("reported unsigned; the topological sign (-1)^(d-1) with d = {d} is not applied"),
        ],
        result,
    )
}

/// Both sides of one identity.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub left: Option<i64>,
    pub right: Option<i64>,
    pub holds: bool,
    pub error: Option<String>,
    #[serde(skip)]
    pub cause: Option<Error>,
}

impl IdentityCheck {
    fn new(name: &str, statement: &str, left: Result<i64>, right: Result<i64>) -> Self {
        let cause = match (&left, &right) {
            (Err(e), _) | (_, Err(e)) => Some(e.clone()),
            _ => None,
        };
        let (left, right) = (left.ok(), right.ok());
        IdentityCheck {
            name: name.into(),
            statement: statement.into(),
            holds: cause.is_none() && left == right,
            left,
            right,
            error: cause.as_ref().map(ToString::to_string),
            cause,
        }
    }
}

/// Memoizes the quantities shared between identities.
struct Terms<'a, 'b> {
    x: &'a VarietyGerm,
    f: &'a MapGerm,
    reference: &'a LinearReference,
    budget: &'a Budget<'b>,
}

impl Terms<'_, '_> {
    fn f(&self, i: usize) -> &Polynomial {
        &self.f.components()[i]
    }

    fn other(&self, i: usize) -> &Polynomial {
        &self.f.components()[1 - i]
    }

    fn milnor_restricted(&self, i: usize) -> Result<i64> {
        milnor_restricted(self.x, self.f(i), self.budget)?.require("restricted Milnor number")
    }

    fn index(&self, c: &OneFormCollection) -> Result<i64> {
        chern_index(self.x, c, self.budget)?.require("index")
    }

    fn linear(&self) -> Result<i64> {
        linear_index(self.x, &CollectionShape::ones(2)?, self.reference, self.budget)
    }

    /// `Ch_{X∩f_j⁻¹(0)}{df_i}` with `j ≠ i`, via minors.
    fn chern_section(&self, i: usize) -> Result<i64> {
        let y = self.x.section(self.other(i))?;
        chern_of_differential(&y, self.f(i), &self.reference.certified(), self.budget)
    }

    fn br_linear_section(&self, i: usize) -> Result<i64> {
        let y = self.x.section(self.other(i))?;
        let (seed, trials) = self.reference.seed_and_trials();
        generic_linear_br_minus(&y, seed, trials, self.budget)
    }

    fn tau_section(&self, i: usize) -> Result<i64> {
        tjurina_icis(&self.x.section(self.other(i))?, self.budget)?.require("Tjurina number")
    }
}

fn sum(parts: &[Result<i64>]) -> Result<i64> {
    parts.iter().try_fold(0i64, |acc, p| p.clone().map(|v| acc + v))
}

/// Evaluates both sides of each identity by independent routes. Failures in
/// one identity are reported inline and do not stop the others.
pub fn identity_report(
    x: &VarietyGerm,
    f: &MapGerm,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> Result<Vec<IdentityCheck>> {
    check_ring(x.ring(), f.ring())?;
    two_components(f)?;
    if x.dim() != 2 {
        return Err(Error::Shape(format!("identities need a surface germ, got dimension {}", x.dim())));
    }
    let t = Terms { x, f, reference, budget };
    let (eta1, eta2) = eta_collections(x, f)?;
    let ind1 = t.index(&eta1);
    let ind2 = t.index(&eta2);
    let lin = t.linear();
    let ch1 = sum(&[ind1.clone(), lin.clone().map(|v| -v)]);
    let ch2 = sum(&[ind2.clone(), lin.clone().map(|v| -v)]);
    let ch_diff = sum(&[ch1.clone(), ch2.clone().map(|v| -v)]);
    let mu1 = t.milnor_restricted(0);
    let mu2 = t.milnor_restricted(1);
    let cusps = cusps_count(x, f, budget).and_then(|v| v.require("cusp count"));
    debug!("identity terms: ind η1 {ind1:?}, ind η2 {ind2:?}, ind l {lin:?}, c {cusps:?}");

    let mut out = Vec::new();
    out.push(IdentityCheck::new(
        "chern_difference_equals_milnor_difference",
        "Ch{η1} − Ch{η2} = μ(f1|X) − μ(f2|X)",
        ch_diff.clone(),
        sum(&[mu1.clone(), mu2.map(|v| -v)]),
    ));
    out.push(IdentityCheck::new(
        "chern_eta1_from_cusps",
        "Ch{η1} = c(f|X) + μ(f1|X) − ind{l}",
        ch1,
        sum(&[cusps, mu1, lin.map(|v| -v)]),
    ));

    let chern_y2 = t.chern_section(0);
    let chern_y1 = t.chern_section(1);
    let br_f1_y2 = x
        .section(t.f(1))
        .and_then(|y| bruce_roberts(t.f(0), &y, true, budget))
        .and_then(|v| v.require("relative Bruce–Roberts number"));
    let br_l_y2 = t.br_linear_section(0);
    out.push(IdentityCheck::new(
        "chern_df1_equals_bruce_roberts_difference",
        "Ch_{X∩f2=0}{df1} = μ⁻_BR(f1, X∩f2=0) − μ⁻_BR(l, X∩f2=0)",
        chern_y2.clone(),
        sum(&[br_f1_y2, br_l_y2.clone().map(|v| -v)]),
    ));

    let br_l_y1 = t.br_linear_section(1);
    let tau_y2 = t.tau_section(0);
    let tau_y1 = t.tau_section(1);
    // Substituting μ(f1|X) − μ(f2|X) = μ(Y1) − μ(Y2) and the relative
    // Bruce–Roberts formula on both sections gives the right side below; the
    // section terms enter with these signs.
    out.push(IdentityCheck::new(
        "chern_difference_from_sections",
        "Ch{η1} − Ch{η2} = Ch_{X∩f1=0}{df2} − Ch_{X∩f2=0}{df1} + μ⁻_BR(l, X∩f1=0) − μ⁻_BR(l, X∩f2=0) + τ(X∩f1=0) − τ(X∩f2=0)",
        ch_diff,
        sum(&[
            chern_y1,
            chern_y2.map(|v| -v),
            br_l_y1,
            br_l_y2.map(|v| -v),
            tau_y1,
            tau_y2.map(|v| -v),
        ]),
    ));

    out.push(generic_target_check(x, f, reference, budget));
    Ok(out)
}

/// After a seeded generic linear change of target coordinates, the section
/// terms cancel and `Ch{η1} − Ch{η2} = Ch_{X∩f1=0}{df2} − Ch_{X∩f2=0}{df1}`.
fn generic_target_check(
    x: &VarietyGerm,
    f: &MapGerm,
    reference: &LinearReference,
    budget: &Budget<'_>,
) -> IdentityCheck {
    let name = "chern_difference_generic_target";
    let statement = "Ch{η1} − Ch{η2} = Ch_{X∩f1=0}{df2} − Ch_{X∩f2=0}{df1} for generic target coordinates";
    let (seed, trials) = reference.seed_and_trials();
    let g = match generic_target(f, seed) {
        Ok(g) => g,
        Err(e) => return IdentityCheck::new(name, statement, Err(e.clone()), Err(e)),
    };
    let certified = LinearReference::Certified { seed, trials };
    let t = Terms { x, f: &g, reference: &certified, budget };
    let left = eta_collections(x, &g).and_then(|(e1, e2)| sum(&[t.index(&e1), t.index(&e2).map(|v| -v)]));
    let right = sum(&[t.chern_section(1), t.chern_section(0).map(|v| -v)]);
    IdentityCheck::new(name, statement, left, right)
}

/// `(a f₁ + b f₂, c f₁ + d f₂)` with seeded coefficients and `ad − bc ≠ 0`.
pub fn generic_target(f: &MapGerm, seed: u64) -> Result<MapGerm> {
    let [f1, f2] = two_components(f)?;
    // a subcollection of two independent forms in two variables
    let shape = CollectionShape::ones(2).expect("valid shape");
    let ring = crate::ring::RingContext::new(["u", "v"]).expect("valid names");
    let collection = random_linear_collection(&ring, &shape, seed ^ 0x5eed);
    let rows = &collection.subcollections()[0];
    let coeff = |p: &Polynomial| -> Scalar { p.constant_coeff() };
    let comps = rows
        .iter()
        .map(|r| &f1.scale(&coeff(&r[0])) + &f2.scale(&coeff(&r[1])))
        .collect();
    MapGerm::new(f.ring(), comps)
}

/// `μ⁻_BR(F, X × ℂᵗ)` against `μ(h)·μ⁻_BR(f, X)` with `F = f + h`.
pub fn suspension_check(
    x: &VarietyGerm,
    f: &Polynomial,
    h: Option<&Polynomial>,
    budget: &Budget<'_>,
) -> IdentityCheck {
    let left = suspension_build(x, f, h)
        .and_then(|(xt, big_f)| bruce_roberts(&big_f, &xt, true, budget))
        .and_then(|v| v.require("relative Bruce–Roberts number of the suspension"));
    let mu_h = match h {
        None => Ok(1),
        Some(h) => milnor_hypersurface(h, budget).and_then(|v| v.require("Milnor number of h")),
    };
    let br = bruce_roberts(f, x, true, budget).and_then(|v| v.require("relative Bruce–Roberts number"));
    let right = mu_h.and_then(|m| br.map(|b| m * b));
    IdentityCheck::new(
        "suspension_multiplicativity",
        "μ⁻_BR(f + h, X × ℂ^t) = μ(h) · μ⁻_BR(f, X)",
        left,
        right,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::RingContext;

    fn ring(names: &[&str]) -> Ring {
        RingContext::new(names.iter().copied()).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn germ(r: &Ring, gens: &[&str]) -> VarietyGerm {
        VarietyGerm::new(r, gens.iter().map(|g| p(r, g)).collect()).unwrap()
    }

    fn map(r: &Ring, comps: &[&str]) -> MapGerm {
        MapGerm::new(r, comps.iter().map(|c| p(r, c)).collect()).unwrap()
    }

    fn fin(v: i64) -> Value {
        Value::Finite(v)
    }

    #[test]
    fn milnor_numbers() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y", "z"]);
        assert_eq!(milnor_hypersurface(&p(&r, "x^2 + y^2 + z^2"), &b).unwrap(), fin(1));
        let r2 = ring(&["x", "y"]);
        assert_eq!(milnor_hypersurface(&p(&r2, "x^3 + y^3"), &b).unwrap(), fin(4));
        assert_eq!(milnor_hypersurface(&p(&r2, "x^2*y"), &b).unwrap(), Value::Infinite);
        let smooth = VarietyGerm::smooth(&r2);
        assert_eq!(milnor_restricted(&smooth, &p(&r2, "x^3 + y^3"), &b).unwrap(), fin(4));
    }

    #[test]
    fn milnor_numbers_of_complete_intersections() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y", "z"]);
        assert_eq!(milnor_icis(&germ(&r, &["x^2 + y^2 + z^2"]), &b).unwrap(), fin(1));
        // the A1 surface cut by x is the A1 curve y² + z² = 0
        assert_eq!(milnor_icis(&germ(&r, &["x^2 + y^2 + z^2", "x"]), &b).unwrap(), fin(1));
        // a smooth line cut out by two smooth equations
        assert_eq!(milnor_icis(&germ(&r, &["x + y^2", "y + z^3"]), &b).unwrap(), fin(0));
        assert_eq!(milnor_icis(&VarietyGerm::smooth(&r), &b).unwrap(), fin(0));
        // the plane cusp, cut out inside z = 0
        assert_eq!(milnor_icis(&germ(&r, &["z", "x^2 + y^3"]), &b).unwrap(), fin(2));
        // x² − y³ alone is a cylinder in 3-space, so the first link is infinite
        assert_eq!(milnor_icis(&germ(&r, &["x^2 - y^3", "z"]), &b).unwrap(), Value::Infinite);
    }

    #[test]
    fn le_greuel_examples() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y", "z"]);
        let phi = map(&r, &["x^2 + y^2 + z^2"]);
        assert_eq!(le_greuel_colength(&phi, &p(&r, "x"), &b).unwrap(), fin(2));
        let r2 = ring(&["x", "y"]);
        let f = p(&r2, "x^3 + x*y^4 + y^5");
        assert_eq!(
            le_greuel_colength(&MapGerm::empty(&r2), &f, &b).unwrap(),
            milnor_hypersurface(&f, &b).unwrap()
        );
    }

    #[test]
    fn tjurina_numbers() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        assert_eq!(tjurina_icis(&germ(&r, &["x^2 + y^3"]), &b).unwrap(), fin(2));
        let r3 = ring(&["x", "y", "z"]);
        assert_eq!(tjurina_icis(&germ(&r3, &["x^2 + y^2 + z^2"]), &b).unwrap(), fin(1));
        for g in ["x^2 + y^3", "x^2 + y^5", "x^3 + y^4"] {
            let f = p(&r, g);
            assert_eq!(tjurina_icis(&germ(&r, &[g]), &b).unwrap(), milnor_hypersurface(&f, &b).unwrap());
        }
        // x^5 + y^5 + x^2 y^2 is not quasi-homogeneous: τ < μ
        let f = p(&r, "x^5 + y^5 + x^2*y^2");
        let tau = tjurina_icis(&germ(&r, &["x^5 + y^5 + x^2*y^2"]), &b).unwrap().finite().unwrap();
        assert!(tau < milnor_hypersurface(&f, &b).unwrap().finite().unwrap());
    }

    #[test]
    fn bruce_roberts_examples() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        let cross = germ(&r, &["x*y"]);
        assert_eq!(bruce_roberts(&p(&r, "x + y"), &cross, true, &b).unwrap(), fin(1));
        let line = germ(&r, &["x"]);
        assert_eq!(bruce_roberts(&p(&r, "x^2 + y^2"), &line, false, &b).unwrap(), fin(2));
        let smooth = VarietyGerm::smooth(&r);
        for rel in [false, true] {
            assert_eq!(bruce_roberts(&p(&r, "x^3 + y^4"), &smooth, rel, &b).unwrap(), fin(6));
        }
    }

    #[test]
    fn br_minus_two_routes() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        let cusp = germ(&r, &["x^2 + y^3"]);
        let f = p(&r, "y");
        assert_eq!(
            br_minus_via_formula(&cusp, &f, &b).unwrap(),
            bruce_roberts(&f, &cusp, true, &b).unwrap()
        );
        let smooth = VarietyGerm::smooth(&r);
        let g = p(&r, "x^2 + y^3");
        assert_eq!(br_minus_via_formula(&smooth, &g, &b).unwrap(), fin(2));
    }

    #[test]
    fn chern_indices() {
        let b = Budget::unlimited();
        let r = ring(&["x"]);
        let c = OneFormCollection::new(
            &r,
            CollectionShape::new(1, vec![1]).unwrap(),
            vec![vec![vec![p(&r, "x")]]],
        )
        .unwrap();
        assert_eq!(chern_index(&VarietyGerm::smooth(&r), &c, &b).unwrap(), fin(1));

        let r2 = ring(&["x", "y"]);
        let smooth = VarietyGerm::smooth(&r2);
        let (eta1, _) = eta_collections(&smooth, &map(&r2, &["x", "y^3 + x*y"])).unwrap();
        assert_eq!(chern_index(&smooth, &eta1, &b).unwrap(), fin(1));
        let reference = LinearReference::seeded(1);
        assert_eq!(chern_number(&smooth, &eta1, &reference, &b).unwrap(), fin(1));
        let l = random_linear_collection(&r2, eta1.shape(), 99);
        assert_eq!(chern_number(&smooth, &l, &reference, &b).unwrap(), fin(0));
    }

    #[test]
    fn cusps() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        let smooth = VarietyGerm::smooth(&r);
        assert_eq!(cusps_count(&smooth, &map(&r, &["x", "y^3 + x*y"]), &b).unwrap(), fin(1));
        assert_eq!(cusps_count(&smooth, &map(&r, &["x", "y^2"]), &b).unwrap(), fin(0));
    }

    #[test]
    fn euler_obstruction_of_morse_function_on_smooth_curve() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y", "z"]);
        let smooth = VarietyGerm::smooth(&r);
        let rep = euler_obstruction_function(&smooth, &p(&r, "y^2 + z^2"), &p(&r, "x"), &LinearReference::seeded(3), &b);
        assert_eq!(rep.value, Some(fin(1)));
        assert!(!rep.assumptions.is_empty());
        assert_eq!(rep.inputs_digest.len(), 64);
    }

    #[test]
    fn suspension_of_crossing_lines() {
        let b = Budget::unlimited();
        let r = ring(&["x", "y"]);
        let cross = germ(&r, &["x*y"]);
        let f = p(&r, "x + y");
        let t = ring(&["w"]);
        for (h, expected) in [("w^2", 1), ("w^3", 2), ("w^4", 3)] {
            let check = suspension_check(&cross, &f, Some(&p(&t, h)), &b);
            assert!(check.holds, "{check:?}");
            assert_eq!(check.right, Some(expected));
        }
        assert!(suspension_check(&cross, &f, None, &b).holds);
    }

    #[test]
    fn digests_are_stable() {
        let a = inputs_digest(&["ring x".into()]);
        assert_eq!(a, inputs_digest(&["ring x".into()]));
        assert_ne!(a, inputs_digest(&["ring y".into()]));
    }
}

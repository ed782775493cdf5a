//! Jacobian matrices and their minors, collections of 1-forms, seeded generic
//! linear collections and suspensions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Budget, Submodule};
use crate::error::{Error, Result};
use crate::logarithmic::VarietyGerm;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};
use crate::scalar::{matrix_rank, Scalar};
use crate::value::Value;

/// Coefficients of random linear forms are drawn from `-COEFF_BOUND..=COEFF_BOUND`.
pub const COEFF_BOUND: i64 = 17;

/// A map germ `(ℂⁿ,0) → (ℂᵖ,0)` given by its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl MapGerm {
    /// Components must vanish at the origin. An empty map is allowed.
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<Self> {
        for c in &components {
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !c.vanishes_at_origin() {
                return Err(Error::NotAtOrigin(format!("{c}")));
            }
        }
        Ok(MapGerm { ring: ring.clone(), components })
    }

    pub fn empty(ring: &Ring) -> Self {
        MapGerm { ring: ring.clone(), components: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `(self, other)` as one map.
    pub fn stack(&self, other: &MapGerm) -> Result<MapGerm> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(MapGerm { ring: self.ring.clone(), components })
    }
}

/// A rectangular matrix of polynomials in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    ncols: usize,
    rows: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, ncols: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::Shape(format!("row of length {} in a matrix with {ncols} columns", r.len())));
            }
            if r.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), ncols, rows })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.ncols != other.ncols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                self.ncols, other.ncols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(PolyMatrix { ring: self.ring.clone(), ncols: self.ncols, rows })
    }

    pub fn without_row(&self, i: usize) -> PolyMatrix {
        let mut rows = self.rows.clone();
        rows.remove(i);
        PolyMatrix { ring: self.ring.clone(), ncols: self.ncols, rows }
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
        rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect()).collect()
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if self.nrows() != self.ncols {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.nrows(),
                self.ncols
            )));
        }
        Ok(determinant(&self.ring, self.rows.clone()))
    }
}

fn determinant(ring: &Ring, m: Vec<Vec<Polynomial>>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let c = |a: usize, b: usize, c: usize, d: usize| {
                &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d])
            };
            let t0 = &m[0][0] * &c(1, 2, 2, 1);
            let t1 = &m[0][1] * &c(0, 2, 2, 0);
            let t2 = &m[0][2] * &c(0, 1, 1, 0);
            &(&t0 - &t1) + &t2
        }
        _ => bareiss(ring, m),
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss(ring: &Ring, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Polynomial::zero(ring);
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("shared ring")
                    .expect("Bareiss divisions are exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// All increasing `t`-subsets of `0..n`.
fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < t - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, t, &mut Vec::new(), &mut out);
    out
}

/// Rows are the gradients of the components: entry `(i, j)` is `∂m_i/∂x_j`.
pub fn jacobian_matrix(m: &MapGerm) -> PolyMatrix {
    let rows = m.components.iter().map(Polynomial::gradient).collect();
    PolyMatrix { ring: m.ring.clone(), ncols: m.ring.nvars(), rows }
}

/// The nonzero `t×t` minors of `m`, without duplicates.
pub fn minors(m: &PolyMatrix, t: usize) -> Result<Vec<Polynomial>> {
    if t == 0 || t > m.nrows().min(m.ncols) {
        return Err(Error::Shape(format!(
            "minors of order {t} of a {}x{} matrix",
            m.nrows(),
            m.ncols
        )));
    }
    let cols = subsets(m.ncols, t);
    let mut out: Vec<Polynomial> = Vec::new();
    for rows in subsets(m.nrows(), t) {
        for cs in &cols {
            let d = determinant(&m.ring, m.submatrix(&rows, cs));
            if !d.is_zero() && !out.contains(&d) && !out.contains(&-&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Ideal generated by the `t×t` minors of `m`.
pub fn minors_of_order(m: &PolyMatrix, t: usize) -> Result<Submodule> {
    Submodule::ideal(&m.ring, minors(m, t)?)
}

/// Determinant of the square Jacobian of `(φ, f)`.
pub fn delta_determinant(phi: &MapGerm, f: &MapGerm) -> Result<Polynomial> {
    let stacked = phi.stack(f)?;
    if stacked.len() != phi.ring.nvars() {
        return Err(Error::Shape(format!(
            "(φ, f) has {} components in {} variables",
            stacked.len(),
            phi.ring.nvars()
        )));
    }
    jacobian_matrix(&stacked).determinant()
}

/// The `n+1` maximal minors of the Jacobian of `(φ, f, Δ)`.
///
/// `β_i` is the minor with row `i` deleted, signed by `(−1)^{i+n+1}` (1-based
/// `i`), so that `β_{n+1} = Δ` and `Σ β_i · row_i = 0`.
pub fn beta_generators(phi: &MapGerm, f: &MapGerm) -> Result<Vec<Polynomial>> {
    let delta = delta_determinant(phi, f)?;
    let n = phi.ring.nvars();
    let full = phi.stack(f)?;
    let jac = jacobian_matrix(&full).stack(&PolyMatrix {
        ring: phi.ring.clone(),
        ncols: n,
        rows: alloc::vec![delta.gradient()],
    })?;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let minor = jac.without_row(i).determinant()?;
        // 0-based i: sign (−1)^{(i+1)+n+1} = (−1)^{i+n}
        out.push(if (i + n).is_multiple_of(2) { minor } else { -&minor });
    }
    debug_assert!(out[n] == delta);
    Ok(out)
}

/// Shape `(d, k_1..k_s)` of a collection of 1-forms on a `d`-dimensional germ:
/// subcollection `i` holds `d − k_i + 1` forms and `Σ k_i = d`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CollectionShape {
    pub d: usize,
    pub ks: Vec<usize>,
}

impl CollectionShape {
    pub fn new(d: usize, ks: Vec<usize>) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::Shape("a collection needs at least one subcollection".into()));
        }
        let total: usize = ks.iter().sum();
        if total != d {
            return Err(Error::Shape(format!("Σ k_i = {total} but the germ has dimension {d}")));
        }
        if ks.contains(&0) {
            return Err(Error::Shape("every k_i must be positive".into()));
        }
        Ok(CollectionShape { d, ks })
    }

    /// Shape `(d; 1, …, 1)` with `s = d`.
    pub fn ones(d: usize) -> Result<Self> {
        CollectionShape::new(d, alloc::vec![1; d])
    }

    pub fn s(&self) -> usize {
        self.ks.len()
    }

    pub fn forms_in(&self, i: usize) -> usize {
        self.d - self.ks[i] + 1
    }
}

/// A 1-form `Σ a_j dx_j`, stored as its coefficient tuple.
pub type OneForm = Vec<Polynomial>;

/// Subcollections of 1-forms with a validated shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormCollection {
    ring: Ring,
    shape: CollectionShape,
    subcollections: Vec<Vec<OneForm>>,
}

impl OneFormCollection {
    pub fn new(ring: &Ring, shape: CollectionShape, subcollections: Vec<Vec<OneForm>>) -> Result<Self> {
        if subcollections.len() != shape.s() {
            return Err(Error::Shape(format!(
                "{} subcollections given, shape expects {}",
                subcollections.len(),
                shape.s()
            )));
        }
        for (i, sub) in subcollections.iter().enumerate() {
            if sub.len() != shape.forms_in(i) {
                return Err(Error::Shape(format!(
                    "subcollection {} has {} forms, expected {}",
                    i + 1,
                    sub.len(),
                    shape.forms_in(i)
                )));
            }
            for form in sub {
                if form.len() != ring.nvars() {
                    return Err(Error::RankMismatch { expected: ring.nvars(), found: form.len() });
                }
                if form.iter().any(|p| !same_ring(p.ring(), ring)) {
                    return Err(Error::RingMismatch);
                }
            }
        }
        Ok(OneFormCollection { ring: ring.clone(), shape, subcollections })
    }

    /// Collection of differentials `dg` of the given functions.
    pub fn of_differentials(ring: &Ring, d: usize, subcollections: &[Vec<Polynomial>]) -> Result<Self> {
        let ks = subcollections
            .iter()
            .map(|s| (d + 1).checked_sub(s.len()).ok_or_else(|| too_many(s.len(), d)))
            .collect::<Result<Vec<_>>>()?;
        let shape = CollectionShape::new(d, ks)?;
        let forms = subcollections
            .iter()
            .map(|s| s.iter().map(Polynomial::gradient).collect())
            .collect();
        OneFormCollection::new(ring, shape, forms)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> &CollectionShape {
        &self.shape
    }

    pub fn subcollections(&self) -> &[Vec<OneForm>] {
        &self.subcollections
    }

    /// The forms of subcollection `i` as the rows of a matrix.
    pub fn matrix(&self, i: usize) -> PolyMatrix {
        PolyMatrix { ring: self.ring.clone(), ncols: self.ring.nvars(), rows: self.subcollections[i].clone() }
    }
}

fn too_many(len: usize, d: usize) -> Error {
    Error::Shape(format!("a subcollection of {len} forms on a germ of dimension {d}"))
}

/// A collection of linear forms of the given shape with integer coefficients
/// drawn uniformly from `[-COEFF_BOUND, COEFF_BOUND]`. A subcollection whose
/// forms come out linearly dependent is redrawn.
pub fn random_linear_collection(ring: &Ring, shape: &CollectionShape, seed: u64) -> OneFormCollection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.nvars();
    let subcollections = (0..shape.s())
        .map(|i| {
            let count = shape.forms_in(i);
            loop {
                let coeffs: Vec<Vec<Scalar>> = (0..count)
                    .map(|_| {
                        (0..n)
                            .map(|_| Scalar::from_i64(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)))
                            .collect()
                    })
                    .collect();
                if matrix_rank(&coeffs) == count.min(n) {
                    break coeffs
                        .into_iter()
                        .map(|row| row.into_iter().map(|c| Polynomial::constant(ring, c)).collect())
                        .collect::<Vec<OneForm>>();
                }
            }
        })
        .collect();
    OneFormCollection { ring: ring.clone(), shape: shape.clone(), subcollections }
}

/// Seeds used for the trials of [`certify_generic`].
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    (0..trials as u64).map(|t| seed.wrapping_add(t.wrapping_mul(0x9e37_79b9_7f4a_7c15))).collect()
}

/// Outcome of a genericity certification.
#[derive(Clone, Debug)]
pub struct CertifiedCollection {
    pub collection: OneFormCollection,
    pub index: i64,
    pub seeds: Vec<u64>,
}

/// Draws `trials` random linear collections and accepts when all of their
/// indices on `x` agree and are finite.
pub fn certify_generic(
    x: &VarietyGerm,
    shape: &CollectionShape,
    seed: u64,
    trials: usize,
    budget: &Budget<'_>,
) -> Result<CertifiedCollection> {
    if trials < 2 {
        return Err(Error::Shape("genericity certification needs at least two trials".into()));
    }
    let seeds = trial_seeds(seed, trials);
    let mut first: Option<(OneFormCollection, Value)> = None;
    let mut values: Vec<Value> = Vec::with_capacity(trials);
    for &s in &seeds {
        let c = random_linear_collection(x.ring(), shape, s);
        let v = crate::invariants::chern_index(x, &c, budget)?;
        values.push(v);
        if first.is_none() {
            first = Some((c, v));
        }
    }
    let (collection, v) = first.expect("at least two trials");
    match v {
        Value::Finite(index) if values.iter().all(|w| *w == v) => {
            Ok(CertifiedCollection { collection, index, seeds })
        }
        _ => {
            let listed: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
            Err(Error::CertificationFailed(format!(
                "linear indices over {trials} trials: {}",
                listed.join(", ")
            )))
        }
    }
}

/// `X̃ = X × ℂᵗ` and `F = f + h`, where `h` lives in a ring of `t` new
/// variables. `None` stands for `t = 0`.
pub fn suspension_build(
    x: &VarietyGerm,
    f: &Polynomial,
    h: Option<&Polynomial>,
) -> Result<(VarietyGerm, Polynomial)> {
    if !same_ring(f.ring(), x.ring()) {
        return Err(Error::RingMismatch);
    }
    let Some(h) = h else {
        return Ok((x.clone(), f.clone()));
    };
    let ring = x.ring().concat(h.ring())?;
    let gens = x.generators().iter().map(|g| g.embed(&ring)).collect::<Result<Vec<_>>>()?;
    let big_f = f.embed(&ring)?.try_add(&h.embed(&ring)?)?;
    Ok((VarietyGerm::new(&ring, gens)?, big_f))
}

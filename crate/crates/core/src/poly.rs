//! Sparse multivariate polynomials over ℚ.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrdering};
use crate::ring::{same_ring, Ring};
use crate::scalar::Scalar;

/// Canonical storage order for polynomial terms.
const STORAGE: MonomialOrdering = MonomialOrdering::global();

/// A polynomial in a [`crate::RingContext`]. Terms are kept sorted in
/// descending degree-reverse-lexicographic order with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Result<Self> {
        if i >= ring.nvars() {
            return Err(Error::IndexOutOfRange { index: i, nvars: ring.nvars() });
        }
        Ok(Self::term(ring, Monomial::var(ring.nvars(), i, 1), Scalar::one()))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Scalar)>) -> Result<Self> {
        if let Some((m, _)) = terms.iter().find(|(m, _)| m.nvars() != ring.nvars()) {
            return Err(Error::RankMismatch { expected: ring.nvars(), found: m.nvars() });
        }
        terms.sort_by(|a, b| STORAGE.cmp_mon(&b.0, &a.0));
        Ok(Polynomial { ring: ring.clone(), terms: combine_sorted(terms) })
    }

    /// Terms in descending degree-reverse-lexicographic order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Value at the origin.
    pub fn constant_coeff(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_coeff().is_zero()
    }

    /// A unit of the local ring at the origin.
    pub fn is_local_unit(&self) -> bool {
        !self.vanishes_at_origin()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| STORAGE.cmp_mon(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the term `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // Multiplying by a monomial preserves the degrevlex order.
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match STORAGE.cmp_mon(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if subtract { -c } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                prods.push((m1.mul(m2), c1 * c2));
            }
        }
        prods.sort_by(|a, b| STORAGE.cmp_mon(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms: combine_sorted(prods) }
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Result<Polynomial> {
        if v >= self.ring.nvars() {
            return Err(Error::IndexOutOfRange { index: v, nvars: self.ring.nvars() });
        }
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.lower(v).map(|(e, m)| (m, c * &Scalar::from_i64(e as i64))))
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars())
            .map(|v| self.derivative(v).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(Error::RankMismatch { expected: self.ring.nvars(), found: point.len() });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                if *e > 0 {
                    t *= &x.pow(*e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(d)?;
        let Some((lm, lc)) = d.terms.first() else {
            return Err(Error::Shape("division by the zero polynomial".into()));
        };
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let Some(q) = lm.quotient_of(m) else {
                return Ok(None);
            };
            let qc = c * &lc_inv;
            rem = rem.merge(&d.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Ok(Some(Polynomial { ring: self.ring.clone(), terms: quot }))
    }

    /// Re-reads the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(j),
                None => {
                    if self.terms.iter().any(|(m, _)| m.exponents()[i] > 0) {
                        return Err(Error::UnknownVariable { name: name.clone(), position: 0 });
                    }
                    map.push(usize::MAX);
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = alloc::vec![0u32; target.nvars()];
                for (i, e) in m.exponents().iter().enumerate() {
                    if *e > 0 {
                        exps[map[i]] = *e;
                    }
                }
                (Monomial::new(&exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|i| self.terms.iter().any(|(m, _)| m.exponents()[*i] > 0))
            .collect()
    }
}

fn combine_sorted(terms: Vec<(Monomial, Scalar)>) -> Vec<(Monomial, Scalar)> {
    let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += &c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
        out.pop();
    }
    out
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending terms, explicit `*` and `^`, e.g.
    /// `3/2*x^2*y - z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(String::from(self.ring.name(i))),
                    _ => factors.push(alloc::format!("{}^{}", self.ring.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator sugar; these panic on ring mismatch, use the `try_*` methods to get
// an error instead.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// The `poly_arith` entry point: one binary operation over a shared ring.
#[derive(Clone, Debug)]
pub enum Operand<'a> {
    Poly(&'a Polynomial),
    Scalar(&'a Scalar),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Scale,
}

pub fn poly_arith(op: ArithOp, a: &Polynomial, b: Operand<'_>) -> Result<Polynomial> {
    match (op, b) {
        (ArithOp::Add, Operand::Poly(b)) => a.try_add(b),
        (ArithOp::Mul, Operand::Poly(b)) => a.try_mul(b),
        (ArithOp::Neg, _) => Ok(-a),
        (ArithOp::Scale, Operand::Scalar(c)) => Ok(a.scale(c)),
        (ArithOp::Mul, Operand::Scalar(c)) => Ok(a.scale(c)),
        (ArithOp::Add, Operand::Scalar(c)) => {
            a.try_add(&Polynomial::constant(a.ring(), c.clone()))
        }
        (ArithOp::Scale, Operand::Poly(_)) => {
            Err(Error::Shape("scale expects a scalar operand".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;
    use alloc::string::ToString;

    fn xy() -> Ring {
        RingContext::new(["x", "y"]).unwrap()
    }

    #[test]
    fn add_inverse_is_zero() {
        let r = xy();
        let x = Polynomial::var(&r, 0).unwrap();
        let z = poly_arith(ArithOp::Add, &x, Operand::Poly(&-&x)).unwrap();
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn difference_of_squares() {
        let r = xy();
        let x = Polynomial::var(&r, 0).unwrap();
        let y = Polynomial::var(&r, 1).unwrap();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Polynomial::var(&xy(), 0).unwrap();
        let other = RingContext::new(["u"]).unwrap();
        let b = Polynomial::var(&other, 0).unwrap();
        assert_eq!(a.try_add(&b).unwrap_err(), Error::RingMismatch);
        assert_eq!(Polynomial::var(&other, 3).unwrap_err(), Error::IndexOutOfRange { index: 3, nvars: 1 });
    }

    #[test]
    fn exact_division() {
        let r = xy();
        let x = Polynomial::var(&r, 0).unwrap();
        let y = Polynomial::var(&r, 1).unwrap();
        let p = &(&x + &y).pow(3) * &(&x - &y);
        assert_eq!(p.div_exact(&(&x - &y)).unwrap().unwrap(), (&x + &y).pow(3));
        assert!(p.div_exact(&(&x + &Polynomial::one(&r))).unwrap().is_none());
    }

    #[test]
    fn formatting() {
        let r = xy();
        let p = Polynomial::from_terms(
            &r,
            alloc::vec![
                (Monomial::new(&[0, 0]), Scalar::from_i64(-1)),
                (Monomial::new(&[2, 0]), Scalar::from_ratio(3, 2).unwrap()),
                (Monomial::new(&[0, 1]), Scalar::from_i64(-1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "3/2*x^2 - y - 1");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!(p.constant_coeff(), Scalar::from_i64(-1));
    }

    #[test]
    fn embed_by_name() {
        let r = xy();
        let big = RingContext::new(["w", "y", "x"]).unwrap();
        let x = Polynomial::var(&r, 0).unwrap();
        let e = x.embed(&big).unwrap();
        assert_eq!(e, Polynomial::var(&big, 2).unwrap());
        let small = RingContext::new(["x"]).unwrap();
        assert!(Polynomial::var(&r, 1).unwrap().embed(&small).is_err());
    }
}

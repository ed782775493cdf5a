//! Internal sparse representation of free-module elements, with terms sorted
//! under one active [`MonomialOrdering`].

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrdering};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mon: Monomial,
    pub coeff: Scalar,
}

/// Terms in strictly descending order for the ordering the vector was built with.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn from_components(components: &[Polynomial], ord: &MonomialOrdering) -> Vector {
        let mut terms: Vec<Term> = components
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| {
                p.terms().iter().map(move |(m, c)| Term { comp, mon: m.clone(), coeff: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp_term(b.comp, &b.mon, a.comp, &a.mon));
        Vector { terms }
    }

    pub fn to_components(&self, ring: &Ring, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = (0..rank).map(|_| Vec::new()).collect();
        for t in &self.terms {
            buckets[t.comp].push((t.mon.clone(), t.coeff.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(ring, b).expect("consistent variable count"))
            .collect()
    }

    /// Drops every term of total degree `≥ d`.
    pub fn truncate(&mut self, d: u32) {
        self.terms.retain(|t| t.mon.degree() < d);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Largest total degree among all terms.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    /// `deg(v) - deg(LM(v))`, the quantity Mora's normal form minimizes.
    pub fn ecart(&self) -> u32 {
        match self.lead() {
            Some(t) => self.max_degree() - t.mon.degree(),
            None => 0,
        }
    }

    pub fn scale(&mut self, c: &Scalar) {
        for t in &mut self.terms {
            t.coeff *= c;
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.inv().expect("nonzero leading coefficient");
                self.scale(&inv);
            }
        }
    }

    /// `self - c * m * other`, where `m` multiplies every term of `other`.
    pub fn sub_mul(&self, c: &Scalar, m: &Monomial, other: &Vector, ord: &MonomialOrdering) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| (t.comp, t.mon.mul(m), &t.coeff)).peekable();
        loop {
            let ord_ab = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.cmp_term(x.comp, &x.mon, y.0, &y.1),
            };
            match ord_ab {
                Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                Ordering::Less => {
                    let (comp, mon, coeff) = b.next().expect("peeked");
                    out.push(Term { comp, mon, coeff: -(c * coeff) });
                }
                Ordering::Equal => {
                    let x = a.next().expect("peeked");
                    let (_, _, coeff) = b.next().expect("peeked");
                    let v = &x.coeff - &(c * coeff);
                    if !v.is_zero() {
                        out.push(Term { comp: x.comp, mon: x.mon.clone(), coeff: v });
                    }
                }
            }
        }
        Vector { terms: out }
    }

    /// Appends a homogenizing variable raising every term to the top degree.
    pub fn homogenize(&self, ord: &MonomialOrdering) -> Vector {
        let d = self.max_degree();
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| {
                let mut e: Vec<u32> = t.mon.exponents().to_vec();
                e.push(d - t.mon.degree());
                Term { comp: t.comp, mon: Monomial::new(&e), coeff: t.coeff.clone() }
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp_term(b.comp, &b.mon, a.comp, &a.mon));
        Vector { terms }
    }

    /// Sets the last variable to one. Terms of a homogeneous vector stay distinct.
    pub fn dehomogenize(&self, ord: &MonomialOrdering) -> Vector {
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| {
                let e = t.mon.exponents();
                Term { comp: t.comp, mon: Monomial::new(&e[..e.len() - 1]), coeff: t.coeff.clone() }
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp_term(b.comp, &b.mon, a.comp, &a.mon));
        Vector { terms }
    }

    /// Keeps only components `>= from`, shifted down by `from`.
    pub fn tail_components(&self, from: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= from)
                .map(|t| Term { comp: t.comp - from, mon: t.mon.clone(), coeff: t.coeff.clone() })
                .collect(),
        }
    }
}

//! Exponent vectors and the monomial orderings that pick between global
//! (Gröbner) and local (Mora) semantics.

use core::cmp::Ordering;
use core::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exponents = SmallVec<[u32; 8]>;

/// A monomial `x^a` stored as its exponent vector, with the total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn new(exps: &[u32]) -> Self {
        Monomial { deg: exps.iter().sum(), exps: SmallVec::from_slice(exps) }
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = power;
        m.deg = power;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            deg: other.deg - self.deg,
            exps: other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial { deg: exps.iter().sum(), exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lowers exponent `i` by one; `None` when it is already zero.
    pub fn lower(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.deg -= 1;
        Some((e, m))
    }

    /// Bitmask of variables with nonzero exponent (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |acc, (i, _)| if i < 64 { acc | (1 << i) } else { acc })
    }

    /// Single variable index if this is a pure power `x_i^e` with `e > 0`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.exps.as_slice().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderKind {
    /// Degree reverse lexicographic; every variable is greater than 1.
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic; every variable is smaller than 1.
    LocalNegDegRevLex,
    /// Total degree first, then the local ordering on all variables but the
    /// last, which homogenizes. Local standard bases are computed under it.
    HomogenizedLocal,
}

/// How terms in different components of a free module compare.
/// Lower component indices rank higher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleExtension {
    None,
    TermOverPosition,
    PositionOverTerm,
    /// Components `< split` dominate all others; term over position inside
    /// each of the two blocks.
    BlockTermOverPosition { split: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialOrdering {
    pub kind: OrderKind,
    pub module: ModuleExtension,
}

impl MonomialOrdering {
    pub const fn global() -> Self {
        MonomialOrdering { kind: OrderKind::GlobalDegRevLex, module: ModuleExtension::None }
    }

    pub const fn local() -> Self {
        MonomialOrdering { kind: OrderKind::LocalNegDegRevLex, module: ModuleExtension::None }
    }

    pub const fn with_module(self, module: ModuleExtension) -> Self {
        MonomialOrdering { kind: self.kind, module }
    }

    pub fn is_local(&self) -> bool {
        self.kind == OrderKind::LocalNegDegRevLex
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(self.cmp_mon(a, b))
    }

    /// Compares module terms `a·e_ca` and `b·e_cb`.
    pub fn compare_terms(&self, ca: usize, a: &Monomial, cb: usize, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(self.cmp_term(ca, a, cb, b))
    }

    #[inline]
    pub(crate) fn cmp_mon(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.deg.cmp(&b.deg);
        let by_degree = match self.kind {
            OrderKind::GlobalDegRevLex => by_degree,
            OrderKind::LocalNegDegRevLex => by_degree.reverse(),
            OrderKind::HomogenizedLocal => by_degree.then_with(|| {
                let t = a.exps.len() - 1;
                a.exps[t].cmp(&b.exps[t])
            }),
        };
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
            if x != y {
                // The smaller exponent in the last differing variable wins.
                return y.cmp(x);
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub(crate) fn cmp_term(&self, ca: usize, a: &Monomial, cb: usize, b: &Monomial) -> Ordering {
        let by_position = cb.cmp(&ca);
        match self.module {
            ModuleExtension::PositionOverTerm => {
                by_position.then_with(|| self.cmp_mon(a, b))
            }
            ModuleExtension::TermOverPosition | ModuleExtension::None => {
                self.cmp_mon(a, b).then(by_position)
            }
            ModuleExtension::BlockTermOverPosition { split } => (cb >= split)
                .cmp(&(ca >= split))
                .then_with(|| self.cmp_mon(a, b))
                .then(by_position),
        }
    }
}

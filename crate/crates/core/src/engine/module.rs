use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// An element of the free module `R^r`, stored componentwise.
#[derive(Clone, PartialEq, Eq)]
pub struct TermVector {
    components: Vec<Polynomial>,
}

impl TermVector {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Shape("a term vector needs at least one component".into()));
        };
        if components.iter().any(|p| !same_ring(p.ring(), first.ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(TermVector { components })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        TermVector { components: alloc::vec![p] }
    }

    pub fn zero(ring: &Ring, rank: usize) -> Self {
        TermVector { components: (0..rank).map(|_| Polynomial::zero(ring)).collect() }
    }

    /// The basis vector `e_i` scaled by `p`.
    pub fn unit(ring: &Ring, rank: usize, i: usize, p: Polynomial) -> Self {
        let mut v = TermVector::zero(ring, rank);
        v.components[i] = p;
        v
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    fn check(&self, other: &TermVector) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TermVector) -> Result<TermVector> {
        self.check(other)?;
        Ok(TermVector {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &TermVector) -> Result<TermVector> {
        self.check(other)?;
        Ok(TermVector {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<TermVector> {
        let components =
            self.components.iter().map(|c| c.try_mul(p)).collect::<Result<Vec<_>>>()?;
        Ok(TermVector { components })
    }

    /// Drops component `i`.
    pub fn without_component(&self, i: usize) -> TermVector {
        let mut components = self.components.clone();
        components.remove(i);
        TermVector { components }
    }

    /// Re-reads every component in `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<TermVector> {
        let components =
            self.components.iter().map(|c| c.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(TermVector { components })
    }

    /// Zero-pads to rank `rank`, keeping existing components in front.
    pub fn extended(&self, rank: usize) -> TermVector {
        let mut components = self.components.clone();
        while components.len() < rank {
            components.push(Polynomial::zero(self.ring()));
        }
        TermVector { components }
    }
}

impl fmt::Debug for TermVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for TermVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl serde::Serialize for TermVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.components.serialize(s)
    }
}

/// A finitely generated submodule of `R^rank`; ideals are the `rank == 1` case.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    generators: Vec<TermVector>,
}

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, generators: Vec<TermVector>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Shape("free module rank must be positive".into()));
        }
        for g in &generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Submodule { ring: ring.clone(), rank, generators })
    }

    pub fn ideal(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Submodule {
            ring: ring.clone(),
            rank: 1,
            generators: generators.into_iter().map(TermVector::from_poly).collect(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[TermVector] {
        &self.generators
    }

    pub fn is_ideal(&self) -> bool {
        self.rank == 1
    }

    /// Generators of an ideal as polynomials.
    pub fn ideal_generators(&self) -> Result<Vec<Polynomial>> {
        if self.rank != 1 {
            return Err(Error::RankMismatch { expected: 1, found: self.rank });
        }
        Ok(self.generators.iter().map(|g| g.component(0).clone()).collect())
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Submodule { ring: self.ring.clone(), rank: self.rank, generators })
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = TermVector>) -> Result<Submodule> {
        let mut generators = self.generators.clone();
        generators.extend(extra);
        Submodule::new(&self.ring, self.rank, generators)
    }

    /// `I·R^rank` for an ideal `I` given by generators.
    pub fn ideal_times_free(ring: &Ring, ideal: &[Polynomial], rank: usize) -> Result<Submodule> {
        let mut generators = Vec::with_capacity(ideal.len() * rank);
        for i in 0..rank {
            for g in ideal {
                generators.push(TermVector::unit(ring, rank, i, g.clone()));
            }
        }
        Submodule::new(ring, rank, generators)
    }
}

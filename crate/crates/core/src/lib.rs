//! Exact computation of local invariants of polynomial germs over ℚ.
//!
//! The crate is `no_std` (it needs `alloc`). It provides sparse polynomial
//! arithmetic with a parser, Gröbner and Mora standard bases for ideals and
//! submodules of free modules, syzygies and minimal resolutions over the local
//! ring at the origin, and on top of that the singularity invariants: Milnor,
//! Tjurina, Bruce-Roberts numbers, Chern indices of collections of 1-forms,
//! cusp counts of plane map-germs and Cohen-Macaulayness of the relative
//! logarithmic characteristic variety.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod diff;
pub mod engine;
mod error;
pub mod invariants;
pub mod logarithmic;
mod monomial;
mod parse;
mod poly;
mod ring;
mod scalar;
mod value;

pub use engine::{
    colength, depth, krull_dimension, minimal_free_resolution, module_contains, module_equality,
    local_betti_numbers, module_membership, normal_form, schreyer_resolution, standard_basis,
    syzygy_module, Budget, Resolution,
    StandardBasisResult, Submodule, TermVector,
};
pub use error::{Error, Result};
pub use monomial::{ModuleExtension, Monomial, MonomialOrdering, OrderKind};
pub use parse::parse_polynomial;
pub use poly::{poly_arith, ArithOp, Operand, Polynomial};
pub use ring::{is_identifier, Ring, RingContext};
pub use scalar::{ParseScalarError, Scalar};
pub use value::Value;

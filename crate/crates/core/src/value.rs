use alloc::string::String;
use core::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Result of a colength-type computation. `Infinite` is a legitimate answer
/// (a non-isolated singularity, say), distinct from a computational failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(i64),
    Infinite,
}

impl Value {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Value::Finite(v) => Some(*v),
            Value::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinite)
    }

    /// The finite value, or [`Error::Infinite`] naming the quantity.
    pub fn require(&self, what: &str) -> Result<i64> {
        self.finite().ok_or_else(|| Error::Infinite(String::from(what)))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Value::Finite(v) => s.serialize_i64(*v),
            Value::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

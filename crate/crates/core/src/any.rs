//! Backend-tagged multivectors for callers that choose the backend at run time.

use crate::engine::CliffordEngine;
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::{Exact, Real};

/// A multivector whose backend is only known at run time. Binary operations
/// on mismatched backends fail with [`Error::BackendMismatch`].
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMultivector {
    Exact(Multivector<Exact>),
    Float(Multivector<f64>),
}

impl AnyMultivector {
    pub fn backend(&self) -> &'static str {
        match self {
            AnyMultivector::Exact(_) => Exact::NAME,
            AnyMultivector::Float(_) => f64::NAME,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::BackendMismatch { left: self.backend(), right: other.backend() }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyMultivector::Exact(a), AnyMultivector::Exact(b)) => Ok(AnyMultivector::Exact(a.wedge(b))),
            (AnyMultivector::Float(a), AnyMultivector::Float(b)) => Ok(AnyMultivector::Float(a.wedge(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyMultivector::Exact(a), AnyMultivector::Exact(b)) => Ok(AnyMultivector::Exact(a + b)),
            (AnyMultivector::Float(a), AnyMultivector::Float(b)) => Ok(AnyMultivector::Float(a + b)),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Product in the given engines' algebra (one engine per backend).
    pub fn product(
        &self,
        other: &Self,
        exact: &CliffordEngine<Exact>,
        float: &CliffordEngine<f64>,
    ) -> Result<Self> {
        match (self, other) {
            (AnyMultivector::Exact(a), AnyMultivector::Exact(b)) => Ok(AnyMultivector::Exact(exact.product(a, b))),
            (AnyMultivector::Float(a), AnyMultivector::Float(b)) => Ok(AnyMultivector::Float(float.product(a, b))),
            _ => Err(self.mismatch(other)),
        }
    }
}

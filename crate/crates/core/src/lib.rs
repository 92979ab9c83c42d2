//! Clifford algebra of Minkowski space and its deformation by an arbitrary
//! bilinear form `B = g + A`.
//!
//! The crate is `no_std` (with `alloc`). Every object is generic over a
//! coefficient backend implementing [`Real`]: `f64` for sampling and
//! [`Exact`] (arbitrary-precision rationals) for law checking.
//!
//! ```
//! use qcliff_core::{CliffordEngine, Exact, Multivector};
//!
//! let eng = CliffordEngine::<Exact>::minkowski();
//! let e0 = Multivector::basis(0).unwrap();
//! assert_eq!(eng.product(&e0, &e0), Multivector::one());
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod any;
pub mod blade;
pub mod covariants;
pub mod deformation;
pub mod engine;
pub mod error;
pub mod exp;
pub mod form;
pub mod matrix;
pub mod multivector;
pub mod phi;
pub mod quantum;
pub mod quaternion;
pub mod scalar;
pub mod spinor;

pub use any::AnyMultivector;
pub use blade::{levi_civita, Blade};
pub use covariants::{classify, compute_covariants, Covariants, LounestoClass};
pub use engine::{b_product, clifford_product_g, CliffordEngine, ProductTable};
pub use error::{Error, Result};
pub use form::{decompose, minkowski, AntisymmetricForm, ArbitraryForm, BilinearForm, SymmetricForm};
pub use multivector::Multivector;
pub use phi::PhiMap;
pub use quantum::{b_classify, BClass, DualityRecord, QuantumContext, QuantumCovariants};
pub use scalar::{Exact, Real};
pub use spinor::{AlgebraicSpinor, ColumnSpinor, IdealKind, Spacetime, SpinorOperator};

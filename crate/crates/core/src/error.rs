use alloc::boxed::Box;

use crate::quantum::DualityRecord;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("operands use different coefficient backends ({left} vs {right})")]
    BackendMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("grade {0} is out of range 0..=4")]
    GradeOutOfRange(usize),
    #[error("basis index {0} is out of range 0..=3")]
    IndexOutOfRange(usize),
    #[error("blade mask {0:#06b} does not fit in four basis vectors")]
    InvalidBlade(u8),
    #[error("expected a homogeneous grade-1 multivector")]
    NotAVector,
    #[error("expected between 1 and 3 vector factors, got {0}")]
    Arity(usize),
    #[error("non-finite value in input")]
    NonFinite,
    #[error("matrix is not symmetric (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },
    #[error("matrix is not antisymmetric (deviation {deviation:e})")]
    NotAntisymmetric { deviation: f64 },
    #[error("metric is singular")]
    SingularMetric,
    #[error("element has odd-grade components; spinor operators are even")]
    NotEven,
    #[error("element has complex coefficients where a real one was required")]
    NotReal,
    #[error("element is not in the minimal left ideal (residual {residual:e})")]
    NotInIdeal { residual: f64 },
    #[error("exponential series did not converge within {terms} terms")]
    SeriesDiverged { terms: usize },
    #[error("covariants cannot be classified: {0}")]
    Unclassifiable(&'static str),
    #[error("pair (classical {}, quantum {}) is not an admissible duality", .0.classical, .0.quantum)]
    Inadmissible(Box<DualityRecord>),
}

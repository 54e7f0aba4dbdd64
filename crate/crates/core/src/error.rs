use alloc::string::String;

use crate::exactnum::Dyadic;

/// Errors raised by the exact group and representation operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a dyadic rational")]
    NonDyadic(String),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("slope {rise}/{run} between breakpoints is not a power of two")]
    NonPowerOfTwoSlope { rise: Dyadic, run: Dyadic },
    #[error("breakpoints are not strictly increasing")]
    NotMonotone,
    #[error("breakpoint list must start at {expected_start} and end at {expected_end}")]
    WrongEndpoints {
        expected_start: &'static str,
        expected_end: &'static str,
    },
    #[error("{0} lies outside the domain")]
    OutOfDomain(Dyadic),
    #[error("{x} has {popcount} binary digits, cannot be split into {k} powers of two")]
    InfeasibleDecomposition { x: Dyadic, k: usize, popcount: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element does not fix {0}")]
    NotFixed(Dyadic),
    #[error("induced-vector label {0} is not an orbit point of the stabilizer")]
    BadLabel(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

use crate::Vector;

/// Errors raised by the geometric kernels and the splitting solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is rank deficient (rank {rank}, expected {expected})")]
    Rank { rank: usize, expected: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dim { expected: usize, got: usize },
    #[error("direction has zero length")]
    DegenerateDirection,
    #[error("simplex stalled after {iterations} iterations")]
    SolverStall { iterations: usize, trace: Vec<f64> },
    #[error("feasible region is empty")]
    Infeasible,
    #[error("objective is unbounded")]
    Unbounded,
    #[error("empty input")]
    EmptyInput,
    #[error("dimension {0} is not supported by this operation")]
    UnsupportedDim(usize),
    #[error("unsupported representation: {0}")]
    UnsupportedRep(String),
    #[error("point lies outside the shadow of the body")]
    OutsideShadow,
    #[error("unknown body `{0}`")]
    UnknownBody(String),
    #[error("domain needs at least two samples")]
    InsufficientDomain,
    #[error("empty intersection at sample {index}")]
    EmptyIntersection { index: usize, parameter: Vector },
    #[error("point lies outside the Minkowski sum")]
    OutsideSum,
    #[error("selection is infeasible at sample {index}")]
    InfeasibleSelection { index: usize, parameter: Vector },
    #[error("kernel is parallel to a factor subspace")]
    NotParallelViolation { kernel_vector: Vector },
    #[error("epsilon too small at sample {index}: eroded set is empty")]
    EpsilonTooSmall { index: usize, parameter: Vector },
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dim { expected, got })
    }
}

//! Error type shared by every module in the crate.

use alloc::string::String;
use thiserror::Error;

/// Failure modes of the numerical operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Cholesky pivot was not strictly positive.
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    /// A pivot fell below the singularity threshold while factorizing.
    #[error("matrix is singular to working precision")]
    SingularMatrix,
    /// A constant transform matrix required to be nonsingular is singular.
    #[error("transform matrix is singular")]
    SingularTransform,
    /// The finite-difference Jacobian determinant underflowed or was not finite.
    #[error("finite-difference jacobian determinant is degenerate")]
    DegenerateJacobian,
    /// A parameter violates the domain stated for the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Doubling the node count moved the quadrature value by more than the
    /// convergence threshold, or a truncation tail bound failed.
    #[error("quadrature did not converge: {0}")]
    NonconvergedQuadrature(String),
    /// Rejection sampling accepted less than 0.1% of proposals.
    #[error("rejection sampling acceptance rate below 0.1%")]
    RejectionTooLow,
    /// Series of a `(s+1)Fs` kind requires spectral norm below one.
    #[error("matrix argument norm too large for series convergence")]
    NormTooLarge,
    /// The hypergeometric layer sums stopped decreasing before truncation.
    #[error("hypergeometric series tail is not decreasing")]
    NonconvergentTail,
    /// The operation is not implemented for this matrix order.
    #[error("unsupported matrix order {0}")]
    UnsupportedOrder(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;

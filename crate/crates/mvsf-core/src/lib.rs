//! Numerical library for matrix-variate gamma and beta integrals and Kober
//! fractional integral operators over Hermitian positive definite matrices.
//!
//! The crate provides two independent routes to the same quantities and is
//! organized around checking them against each other:
//!
//! * closed forms — complex/real multivariate gamma and beta functions
//!   ([`multigamma`]), Kober operator special cases ([`kober`]), and
//!   zonal-polynomial hypergeometric series ([`zonal`]);
//! * direct evaluation — deterministic quadrature of the explicit scalar
//!   parametrizations for matrix order 2 and Monte-Carlo integration over the
//!   positive definite cone for general small order ([`integrate`]), backed by
//!   an exact matrix-gamma sampler ([`sampler`]) and finite-difference
//!   verification of the change-of-variable factors ([`jacobians`]).
//!
//! Everything is dense and dimension-generic but tuned for matrix order
//! `p <= 4`; all randomness is reproducible from explicit 64-bit seeds.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only switches the float math from `libm` to the platform intrinsics.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod hermitian;
pub mod integrate;
pub mod jacobians;
pub mod kober;
pub mod matrix;
pub mod multigamma;
pub mod sampler;
pub mod special;
pub mod zonal;

pub use error::{Error, Result};
pub use hermitian::{HermitianMatrix, LowerTriangular, SymmetricMatrix};
pub use matrix::ComplexMatrix;

/// Complex scalar with `f64` real and imaginary parts; the `i = sqrt(-1)`
/// decomposition used by every matrix type in the crate.
pub type Complex64 = num_complex::Complex<f64>;

//! Closed-form matrix-variate gamma and beta functions, real and complex
//! case, for general order `p`.
//!
//! These are the ground-truth side of every verification in the crate:
//!
//! * complex: `G~_p(a) = pi^(p(p-1)/2) G(a) G(a-1) ... G(a-p+1)`, `a > p-1`;
//! * real:    `G_p(a)  = pi^(p(p-1)/4) prod_j G(a-(j-1)/2)`, `a > (p-1)/2`;
//! * the corresponding beta functions as gamma ratios.
//!
//! All parameters are real; the domain conditions are hard edges of the
//! underlying integral representations and are rejected, not reflected.

use alloc::format;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;

use crate::error::{Error, Result};
use crate::special::gamma;

/// Complex-case multivariate gamma `G~_p(alpha)`; requires `alpha > p - 1`.
pub fn complex_multigamma(p: usize, alpha: f64) -> Result<f64> {
    check_order(p)?;
    if !(alpha > p as f64 - 1.0) {
        return Err(Error::domain(format!(
            "complex multigamma requires alpha > p - 1 (alpha = {alpha}, p = {p})"
        )));
    }
    let mut value = core::f64::consts::PI.powi((p * (p - 1) / 2) as i32);
    for j in 0..p {
        value *= gamma(alpha - j as f64);
    }
    Ok(value)
}

/// Real-case multivariate gamma `G_p(alpha)`; requires `alpha > (p - 1)/2`.
pub fn real_multigamma(p: usize, alpha: f64) -> Result<f64> {
    check_order(p)?;
    if !(alpha > (p as f64 - 1.0) / 2.0) {
        return Err(Error::domain(format!(
            "real multigamma requires alpha > (p - 1)/2 (alpha = {alpha}, p = {p})"
        )));
    }
    let mut value = core::f64::consts::PI.powf((p * (p - 1)) as f64 / 4.0);
    for j in 1..=p {
        value *= gamma(alpha - (j as f64 - 1.0) / 2.0);
    }
    Ok(value)
}

/// Complex-case matrix-variate beta `B~_p(alpha, beta)`, symmetric in its
/// arguments; requires `alpha, beta > p - 1`.
pub fn complex_matrix_beta(p: usize, alpha: f64, beta: f64) -> Result<f64> {
    Ok(complex_multigamma(p, alpha)? * complex_multigamma(p, beta)?
        / complex_multigamma(p, alpha + beta)?)
}

/// Real-case matrix-variate beta `B_p(alpha, beta)`; requires
/// `alpha, beta > (p - 1)/2`.
pub fn real_matrix_beta(p: usize, alpha: f64, beta: f64) -> Result<f64> {
    Ok(real_multigamma(p, alpha)? * real_multigamma(p, beta)?
        / real_multigamma(p, alpha + beta)?)
}

fn check_order(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::domain("order p must be at least 1"));
    }
    Ok(())
}

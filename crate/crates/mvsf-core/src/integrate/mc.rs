//! Monte-Carlo estimation of the matrix-variate gamma and beta integrals.
//!
//! All estimators run on reproducible counter-addressed randomness: batch `b`
//! of a run with seed `s` draws from the ChaCha stream `(s, b)`, batches are
//! reduced in index order, and a `(seed, samples, batch_size)` triple gives
//! bit-identical estimates on one platform. Standard errors come from batch
//! means, which stay honest under the skewed importance weights.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::sampler;
use crate::Complex64;

/// Monte-Carlo controls. `samples` is the total draw count (at least 10^4),
/// split into batches of `batch_size` plus a final partial batch.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    samples: usize,
    seed: u64,
    batch_size: usize,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        Self::with_batch_size(samples, seed, 10_000)
    }

    pub fn with_batch_size(samples: usize, seed: u64, batch_size: usize) -> Result<Self> {
        if samples < 10_000 {
            return Err(Error::domain("samples must be at least 10^4"));
        }
        if batch_size == 0 {
            return Err(Error::domain("batch_size must be positive"));
        }
        Ok(McConfig {
            samples,
            seed,
            batch_size,
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn batch_size(&self) -> usize {
        self.batch_size
    }
}

/// A Monte-Carlo estimate with its standard error and sample count.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n: usize,
}

impl McEstimate {
    /// True when `target` lies within `k` standard errors of the estimate.
    pub fn brackets(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

/// Which integral representation of the beta function to estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaRepresentation {
    /// Integral over `O < X < I` of `|det X|^(a-p) |det(I-X)|^(b-p)`.
    Type1,
    /// Integral over `U > O` of `|det U|^(a-p) |det(I+U)|^-(a+b)`.
    Type2,
}

/// Independently seeded stream for one batch of a run.
pub(crate) fn batch_rng(seed: u64, batch_index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(batch_index);
    rng
}

/// Batch-means driver. Calls `draw` exactly `cfg.samples` times; the first
/// component of its return is the statistic being averaged, the second an
/// acceptance indicator. Returns the estimate and the mean acceptance.
pub(crate) fn mc_mean_with_acceptance(
    cfg: &McConfig,
    mut draw: impl FnMut(&mut ChaCha12Rng) -> (f64, f64),
) -> (McEstimate, f64) {
    let n = cfg.samples;
    let bs = cfg.batch_size;
    let n_batches = n.div_ceil(bs);
    let mut total = 0.0f64;
    let mut total_sq = 0.0f64;
    let mut accepted = 0.0f64;
    let mut batch_means: Vec<f64> = Vec::new();
    for b in 0..n_batches {
        let size = bs.min(n - b * bs);
        let mut rng = batch_rng(cfg.seed, b as u64);
        let mut batch_sum = 0.0f64;
        for _ in 0..size {
            let (v, a) = draw(&mut rng);
            batch_sum += v;
            total_sq += v * v;
            accepted += a;
        }
        total += batch_sum;
        if size == bs {
            batch_means.push(batch_sum / bs as f64);
        }
    }
    let mean = total / n as f64;
    let std_error = if batch_means.len() >= 2 {
        let b = batch_means.len() as f64;
        let bm: f64 = batch_means.iter().sum::<f64>() / b;
        let var: f64 = batch_means.iter().map(|m| (m - bm) * (m - bm)).sum::<f64>() / (b - 1.0);
        (var / b).sqrt()
    } else {
        // fewer than two full batches: fall back to the per-sample variance
        let var = (total_sq - n as f64 * mean * mean) / (n as f64 - 1.0);
        (var.max(0.0) / n as f64).sqrt()
    };
    (
        McEstimate {
            value: mean,
            std_error,
            n,
        },
        accepted / n as f64,
    )
}

/// Uniform draw from the sampling box of the type-1 beta representation:
/// diagonal in `(0,1)`, off-diagonal real and imaginary parts in `(-1,1)`.
pub(crate) fn draw_box_hermitian<R: Rng + ?Sized>(p: usize, rng: &mut R) -> HermitianMatrix {
    let diag: Vec<f64> = (0..p).map(|_| rng.random_range(0.0..1.0)).collect();
    let lower: Vec<Complex64> = (0..p * (p - 1) / 2)
        .map(|_| {
            Complex64::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        })
        .collect();
    HermitianMatrix::from_lower_parts(&diag, &lower).expect("valid construction")
}

/// Volume of that box: `1^p * 4^(p(p-1)/2)`.
pub(crate) fn box_volume(p: usize) -> f64 {
    (1u64 << (p * (p - 1))) as f64
}

/// Estimates the complex matrix-gamma integral
/// `int_{X>O} |det X|^(alpha-p) e^-tr(X) dX`
/// by importance sampling from the matrix-gamma law at a backed-off reference
/// shape, weighting by the density ratio. Supports `p in {1,2,3}` and
/// `alpha > p - 1`.
pub fn mc_gamma_integral(p: usize, alpha: f64, cfg: &McConfig) -> Result<McEstimate> {
    if !(1..=3).contains(&p) {
        return Err(Error::domain(format!(
            "mc gamma integral supports p in {{1,2,3}}, got {p}"
        )));
    }
    if !(alpha > p as f64 - 1.0) {
        return Err(Error::domain("mc gamma integral requires alpha > p - 1"));
    }
    // reference shape: back off by 1/2 when the domain allows, else midpoint;
    // either choice keeps the weight |det X|^(alpha-alpha0) square-integrable
    let alpha0 = reference_shape(p, alpha);
    let params0 = sampler::MatrixGammaParams::new(alpha0, HermitianMatrix::identity(p))?;
    let (estimate, _) = mc_mean_with_acceptance(cfg, |rng| {
        let x = sampler::draw_standard(p, alpha0, rng);
        let proposal = sampler::density(&params0, &x).expect("draw is in the support");
        let integrand = x.abs_det().powf(alpha - p as f64) * (-x.trace()).exp();
        (integrand / proposal, 1.0)
    });
    Ok(estimate)
}

pub(crate) fn reference_shape(p: usize, alpha: f64) -> f64 {
    if alpha - 0.5 > p as f64 - 1.0 {
        alpha - 0.5
    } else {
        (alpha + p as f64 - 1.0) / 2.0
    }
}

/// Estimates the complex matrix-variate beta integral in either
/// representation for `alpha, beta > p - 1`.
///
/// Type 1 integrates over the bounded interval `O < X < I` by uniform
/// rejection sampling over the Hermitian box with the analytic box volume as
/// normalization. Type 2 estimates the unbounded representation through the
/// substitution `U = (I-X)^(-1/2) X (I-X)^(-1/2) = (I-X)^(-1) - I`, whose
/// factor is `|det(I-X)|^(-2p)` by the Hermitian inverse transformation, so
/// both representations run on the same bounded sampling core but evaluate
/// different integrands and must agree.
pub fn mc_beta_integral(
    p: usize,
    alpha: f64,
    beta: f64,
    representation: BetaRepresentation,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if p == 0 {
        return Err(Error::domain("order p must be at least 1"));
    }
    if !(alpha > p as f64 - 1.0 && beta > p as f64 - 1.0) {
        return Err(Error::domain("mc beta integral requires alpha, beta > p - 1"));
    }
    let vol = box_volume(p);
    let identity = HermitianMatrix::identity(p);
    let pf = p as f64;
    let (estimate, acceptance) = mc_mean_with_acceptance(cfg, |rng| {
        let x = draw_box_hermitian(p, rng);
        let one_minus = identity.sub(&x);
        if !x.is_positive_definite() || !one_minus.is_positive_definite() {
            return (0.0, 0.0);
        }
        let value = match representation {
            BetaRepresentation::Type1 => {
                x.abs_det().powf(alpha - pf) * one_minus.abs_det().powf(beta - pf)
            }
            BetaRepresentation::Type2 => {
                let inv = one_minus.inverse().expect("interior point is nonsingular");
                let u = inv.sub(&identity);
                let jac = one_minus.abs_det().powi(-2 * p as i32);
                u.abs_det().powf(alpha - pf)
                    * u.add(&identity).abs_det().powf(-(alpha + beta))
                    * jac
            }
        };
        (vol * value, 1.0)
    });
    if acceptance < 1e-3 {
        return Err(Error::RejectionTooLow);
    }
    Ok(estimate)
}

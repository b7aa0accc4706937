//! Partitions, complex zonal polynomials, generalized Pochhammer symbols, and
//! truncated hypergeometric functions of Hermitian matrix argument.
//!
//! The complex-case zonal polynomial is fixed as `C~_K = f^K s_K`, where
//! `s_K` is the Schur polynomial in the eigenvalues and `f^K` the
//! standard-tableau count `k! / prod(hooks)`. This is the unique scaling of
//! the Schur basis that satisfies both the layer normalization
//! `sum_{K of weight k} C~_K(X) = (tr X)^k` and the binomial identity
//! `1F0(a; X) = |det(I - X)|^-a` under `[a]_K = prod_i (a - i + 1)_(k_i)`,
//! and both identities are enforced by tests rather than assumed.
//!
//! Schur polynomials are evaluated through Jacobi-Trudi determinants in the
//! complete homogeneous basis, built from power sums by Newton's identities;
//! this stays finite at repeated eigenvalues, which are primary test points.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::real_det_in_place;
use crate::special::{factorial, rising_factorial};

/// Weakly decreasing tuple of positive integers indexing a series term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates weak decrease; trailing zeros are trimmed.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }
}

/// All partitions of weight `k` with at most `max_parts` parts, in
/// reverse-lexicographic order: `(4), (3,1), (2,2)` for `k = 4`, two parts.
pub fn partitions_of(k: usize, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn go(
        remaining: usize,
        max_part: usize,
        slots: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        if slots == 0 {
            return;
        }
        // smallest admissible first part still fills the remaining slots
        let lo = remaining.div_ceil(slots);
        let hi = remaining.min(max_part);
        for first in (lo..=hi).rev() {
            prefix.push(first);
            go(remaining - first, first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    go(k, k.max(1), max_parts, &mut prefix, &mut out);
    out
}

/// Complex-case generalized Pochhammer symbol
/// `[a]_K = prod_i (a - i + 1)_(k_i)`. Zeros are legitimate values; they
/// terminate hypergeometric series.
pub fn gen_pochhammer(a: f64, k: &Partition) -> f64 {
    k.parts
        .iter()
        .enumerate()
        .map(|(i, &ki)| rising_factorial(a - i as f64, ki))
        .product()
}

/// Number of standard Young tableaux of shape `k`, by the hook length
/// formula, as a float.
fn syt_count(parts: &[usize]) -> f64 {
    let weight: usize = parts.iter().sum();
    let mut hooks = 1.0;
    for (i, &pi) in parts.iter().enumerate() {
        for j in 0..pi {
            let col_len = parts.iter().filter(|&&q| q > j).count();
            let hook = (pi - j) + (col_len - i) - 1;
            hooks *= hook as f64;
        }
    }
    factorial(weight) / hooks
}

/// Complete homogeneous symmetric polynomials `h_0..h_max` of `eigs`, from
/// power sums by Newton's identities `m h_m = sum_j p_j h_(m-j)`.
fn complete_homogeneous(eigs: &[f64], max: usize) -> Vec<f64> {
    let mut power_sums = vec![0.0f64; max + 1];
    for m in 1..=max {
        power_sums[m] = eigs.iter().map(|l| l.powi(m as i32)).sum();
    }
    let mut h = vec![0.0f64; max + 1];
    h[0] = 1.0;
    for m in 1..=max {
        let mut acc = 0.0;
        for j in 1..=m {
            acc += power_sums[j] * h[m - j];
        }
        h[m] = acc / m as f64;
    }
    h
}

/// Schur polynomial `s_K(eigs)` by the Jacobi-Trudi determinant
/// `det(h_(K_i - i + j))`.
fn schur_from_h(parts: &[usize], h: &[f64]) -> f64 {
    let l = parts.len();
    if l == 0 {
        return 1.0;
    }
    let mut m = vec![0.0f64; l * l];
    for i in 0..l {
        for j in 0..l {
            let idx = parts[i] as isize - i as isize + j as isize;
            m[i * l + j] = if idx < 0 { 0.0 } else { h[idx as usize] };
        }
    }
    real_det_in_place(l, &mut m)
}

/// Complex zonal polynomial `C~_K(X) = f^K s_K(eig(X))`; zero when the
/// partition has more parts than the order of `X`.
pub fn zonal_c(k: &Partition, x: &HermitianMatrix) -> f64 {
    if k.num_parts() > x.order() {
        return 0.0;
    }
    if k.num_parts() == 0 {
        return 1.0;
    }
    let (eigs, _) = x.eigh();
    let max_h = k.parts[0] + k.num_parts();
    let h = complete_homogeneous(&eigs, max_h);
    syt_count(&k.parts) * schur_from_h(&k.parts, &h)
}

/// Parameters of a matrix-argument hypergeometric series `rFs` and its
/// truncation degree.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec {
    a_params: Vec<f64>,
    b_params: Vec<f64>,
    k_max: usize,
}

impl HypSeriesSpec {
    /// Requires `s >= r` or `r = s + 1` (other shapes diverge for matrix
    /// argument) and a truncation degree of at least 10.
    pub fn new(a_params: Vec<f64>, b_params: Vec<f64>, k_max: usize) -> Result<Self> {
        let (r, s) = (a_params.len(), b_params.len());
        if !(s >= r || r == s + 1) {
            return Err(Error::domain(
                "series requires s >= r or r = s + 1 to converge",
            ));
        }
        if k_max < 10 {
            return Err(Error::domain("truncation degree must be at least 10"));
        }
        Ok(HypSeriesSpec {
            a_params,
            b_params,
            k_max,
        })
    }

    pub fn a_params(&self) -> &[f64] {
        &self.a_params
    }

    pub fn b_params(&self) -> &[f64] {
        &self.b_params
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// The series with one parameter appended to each side, as produced by
    /// the operator evaluations.
    pub fn promoted(&self, a_extra: f64, b_extra: f64) -> Result<HypSeriesSpec> {
        let mut a = self.a_params.clone();
        let mut b = self.b_params.clone();
        a.push(a_extra);
        b.push(b_extra);
        HypSeriesSpec::new(a, b, self.k_max)
    }
}

/// Truncated `rFs` of Hermitian matrix argument:
/// `sum_k sum_{K of weight k} prod[a_i]_K / prod[b_j]_K C~_K(X) / k!`
/// up to degree `k_max`, plus a last-layer-ratio tail estimate.
///
/// When `r = s + 1` the spectral norm of `X` must be below one. A vanishing
/// denominator symbol is a domain error; layer magnitudes that fail to
/// decrease over the last three degrees are a convergence failure.
pub fn hyp_pfq(spec: &HypSeriesSpec, x: &HermitianMatrix) -> Result<(f64, f64)> {
    let p = x.order();
    if spec.a_params.len() == spec.b_params.len() + 1 && x.spectral_norm() >= 1.0 {
        return Err(Error::NormTooLarge);
    }
    let (eigs, _) = x.eigh();
    let h = complete_homogeneous(&eigs, spec.k_max + p);

    let mut layers = Vec::with_capacity(spec.k_max + 1);
    let mut value = 0.0f64;
    for k in 0..=spec.k_max {
        let mut layer = 0.0f64;
        for part in partitions_of(k, p) {
            let mut coeff = 1.0;
            for &a in &spec.a_params {
                coeff *= gen_pochhammer(a, &part);
            }
            if coeff == 0.0 {
                continue;
            }
            for &b in &spec.b_params {
                let denom = gen_pochhammer(b, &part);
                if denom == 0.0 {
                    return Err(Error::domain(
                        "denominator parameter vanishes on a partition of the series",
                    ));
                }
                coeff /= denom;
            }
            layer += coeff * syt_count(part.parts()) * schur_from_h(part.parts(), &h);
        }
        layer /= factorial(k);
        layers.push(layer);
        value += layer;
    }

    let tail = tail_estimate(&layers)?;
    Ok((value, tail))
}

fn tail_estimate(layers: &[f64]) -> Result<f64> {
    let n = layers.len();
    let m0 = layers[n - 1].abs();
    let m1 = layers[n - 2].abs();
    let m2 = layers[n - 3].abs();
    if m0 == 0.0 && m1 == 0.0 {
        // terminated series (polynomial case)
        return Ok(0.0);
    }
    if m0 >= m1 && m1 >= m2 {
        return Err(Error::NonconvergentTail);
    }
    let ratio = if m1 > 0.0 { (m0 / m1).min(0.99) } else { 0.9 };
    Ok(m0 * ratio / (1.0 - ratio))
}

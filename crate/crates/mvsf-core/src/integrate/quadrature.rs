//! Deterministic quadrature of the order-2 gamma and beta integrals in the
//! scalar coordinates obtained from the explicit substitutions:
//!
//! * real gamma:     `x2 = sqrt(x1 x3) r`, Jacobian `sqrt(x1 x3)`;
//! * complex gamma:  `x2 = sqrt(x1 x3) r cos(th)`, `y2 = sqrt(x1 x3) r sin(th)`,
//!   Jacobian `x1 x3 r`;
//! * real beta:      `u = x1 - x2^2/x3`, `v = u/b`, `z = x2/sqrt(x3(1-x3))`,
//!   leaving the factored integrand in `(x3, v, z)`;
//! * complex beta:   the same chain plus `z1 = r cos(th)`, `z2 = r sin(th)`.
//!
//! Each operation evaluates a full tensor Gauss-Legendre grid at the requested
//! node count and again at double the count; a relative shift above 1e-6 is a
//! convergence failure. Semi-infinite axes are truncated at `radial_truncation`
//! with an explicit tail bound check.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;

use crate::error::{Error, Result};

/// Quadrature controls: tensor nodes per axis and the cutoff for the
/// semi-infinite axes.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    nodes_per_axis: usize,
    radial_truncation: f64,
}

impl QuadratureSpec {
    /// Requires at least 16 nodes per axis and a cutoff of at least 30.
    pub fn new(nodes_per_axis: usize, radial_truncation: f64) -> Result<Self> {
        if nodes_per_axis < 16 {
            return Err(Error::domain("nodes_per_axis must be at least 16"));
        }
        if !(radial_truncation >= 30.0) {
            return Err(Error::domain("radial_truncation must be at least 30"));
        }
        Ok(QuadratureSpec {
            nodes_per_axis,
            radial_truncation,
        })
    }

    pub fn nodes_per_axis(&self) -> usize {
        self.nodes_per_axis
    }

    pub fn radial_truncation(&self) -> f64 {
        self.radial_truncation
    }
}

impl Default for QuadratureSpec {
    // 128 nodes keep the node-doubling certificate below 1e-6 for the
    // half-integer exponents of the real-case integrands; exponents closer
    // to zero need a finer spec from the caller.
    fn default() -> Self {
        QuadratureSpec {
            nodes_per_axis: 128,
            radial_truncation: 40.0,
        }
    }
}

/// Gauss-Legendre nodes and weights on `(-1, 1)`, by Newton iteration on the
/// Legendre recurrence from the Chebyshev initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut x = alloc::vec![0.0f64; n];
    let mut w = alloc::vec![0.0f64; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0f64;
            let mut p1 = 0.0f64;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Nodes and weights mapped to `(a, b)`.
fn scaled_nodes(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    (
        x.iter().map(|t| c + d * t).collect(),
        w.iter().map(|v| v * d).collect(),
    )
}

/// Fails unless the mass of `x^(alpha-1) e^-x` beyond the cutoff is
/// negligible relative to `value`.
fn check_gamma_tail(alpha: f64, cutoff: f64, value: f64) -> Result<()> {
    if alpha - 1.0 >= cutoff / 2.0 {
        return Err(Error::NonconvergedQuadrature(format!(
            "cutoff {cutoff} too small for alpha = {alpha}"
        )));
    }
    // incomplete-gamma tail bound: R^(a-1) e^-R / (1 - (a-1)/R)
    let tail = cutoff.powf((alpha - 1.0).max(0.0)) * (-cutoff).exp()
        / (1.0 - (alpha - 1.0).max(0.0) / cutoff);
    if tail > 1e-12 * value.max(1.0) {
        return Err(Error::NonconvergedQuadrature(format!(
            "truncation tail {tail:.3e} too large at cutoff {cutoff}"
        )));
    }
    Ok(())
}

fn converge(coarse: f64, fine: f64) -> Result<f64> {
    if (fine - coarse).abs() > 1e-6 * fine.abs() {
        return Err(Error::NonconvergedQuadrature(format!(
            "doubling nodes moved the value from {coarse:.12e} to {fine:.12e}"
        )));
    }
    Ok(fine)
}

/// Triple integral of the real order-2 gamma parametrization over
/// `(x1, x3) in (0, R)^2`, `r in (-1, 1)`:
/// `(x1 x3)^(alpha-3/2) (1-r^2)^(alpha-3/2) e^-(x1+x3) sqrt(x1 x3)`.
/// Converges to the real multigamma at order 2; requires `alpha > 1/2`.
pub fn gamma_integral_real_p2(alpha: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha > 0.5) {
        return Err(Error::domain("real gamma integral requires alpha > 1/2"));
    }
    let eval = |n: usize| -> f64 {
        let (xs, xw) = scaled_nodes(n, 0.0, spec.radial_truncation);
        let (rs, rw) = scaled_nodes(n, -1.0, 1.0);
        // per-axis weighted integrand factors; the r sum is invariant of
        // (x1, x3) and hoists out of the tensor accumulation
        let r_sum: f64 = rs
            .iter()
            .zip(&rw)
            .map(|(&r, &w)| w * (1.0 - r * r).powf(alpha - 1.5))
            .sum();
        let xf: Vec<f64> = xs
            .iter()
            .zip(&xw)
            .map(|(&x, &w)| w * x.powf(alpha - 1.5) * (-x).exp())
            .collect();
        let mut total = 0.0;
        for (i, &x1) in xs.iter().enumerate() {
            for (j, &x3) in xs.iter().enumerate() {
                total += xf[i] * xf[j] * (x1 * x3).sqrt() * r_sum;
            }
        }
        total
    };
    let n = spec.nodes_per_axis;
    let value = converge(eval(n), eval(2 * n))?;
    check_gamma_tail(alpha, spec.radial_truncation, value)?;
    Ok(value)
}

/// Quadruple integral of the complex order-2 gamma parametrization over
/// `(x1, x3) in (0, R)^2`, `r in (0, 1)`, `theta in (0, 2 pi)`:
/// `(x1 x3)^(alpha-1) r (1-r^2)^(alpha-2) e^-(x1+x3)`.
/// Converges to the complex multigamma at order 2; requires `alpha > 1`.
pub fn gamma_integral_complex_p2(alpha: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::domain("complex gamma integral requires alpha > 1"));
    }
    let eval = |n: usize| -> f64 {
        let (xs, xw) = scaled_nodes(n, 0.0, spec.radial_truncation);
        let (rs, rw) = scaled_nodes(n, 0.0, 1.0);
        let (_, tw) = scaled_nodes(n, 0.0, 2.0 * core::f64::consts::PI);
        let r_sum: f64 = rs
            .iter()
            .zip(&rw)
            .map(|(&r, &w)| w * r * (1.0 - r * r).powf(alpha - 2.0))
            .sum();
        let xf: Vec<f64> = xs
            .iter()
            .zip(&xw)
            .map(|(&x, &w)| w * x.powf(alpha - 1.0) * (-x).exp())
            .collect();
        // the integrand carries no explicit theta dependence
        let theta_sum: f64 = tw.iter().sum();
        let mut total = 0.0;
        for fi in &xf {
            for fj in &xf {
                total += fi * fj * r_sum * theta_sum;
            }
        }
        total
    };
    let n = spec.nodes_per_axis;
    let value = converge(eval(n), eval(2 * n))?;
    check_gamma_tail(alpha, spec.radial_truncation, value)?;
    Ok(value)
}

/// Triple integral of the real order-2 beta parametrization in the
/// `(x3, v, z)` coordinates over `(0,1) x (0,1) x (-1,1)`:
/// `x3^(alpha-3/2) (1-x3)^(beta-3/2) v^(alpha-3/2) (1-v)^(beta-3/2)
///  (1-z^2)^(alpha+beta-2) sqrt(x3 (1-x3))`,
/// the last factor being the measure of the `z` substitution. Converges to
/// the real matrix beta at order 2; requires `alpha, beta > 1/2`.
pub fn beta_integral_real_p2(alpha: f64, beta: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha > 0.5 && beta > 0.5) {
        return Err(Error::domain("real beta integral requires alpha, beta > 1/2"));
    }
    let eval = |n: usize| -> f64 {
        let (xs, xw) = scaled_nodes(n, 0.0, 1.0);
        let (zs, zw) = scaled_nodes(n, -1.0, 1.0);
        let x3f: Vec<f64> = xs
            .iter()
            .zip(&xw)
            .map(|(&x, &w)| {
                w * x.powf(alpha - 1.5) * (1.0 - x).powf(beta - 1.5) * (x * (1.0 - x)).sqrt()
            })
            .collect();
        let vf: Vec<f64> = xs
            .iter()
            .zip(&xw)
            .map(|(&v, &w)| w * v.powf(alpha - 1.5) * (1.0 - v).powf(beta - 1.5))
            .collect();
        let z_sum: f64 = zs
            .iter()
            .zip(&zw)
            .map(|(&z, &w)| w * (1.0 - z * z).powf(alpha + beta - 2.0))
            .sum();
        let mut total = 0.0;
        for a in &x3f {
            for b in &vf {
                total += a * b * z_sum;
            }
        }
        total
    };
    let n = spec.nodes_per_axis;
    converge(eval(n), eval(2 * n))
}

/// Quadruple integral of the complex order-2 beta parametrization in the
/// `(x3, v, r, theta)` coordinates:
/// `x3^(alpha-2) (1-x3)^(beta-2) v^(alpha-2) (1-v)^(beta-2)
///  r (1-r^2)^(alpha+beta-3) x3 (1-x3)`,
/// the trailing factor being the two-coordinate `z1, z2` measure. Converges
/// to the complex matrix beta at order 2; requires `alpha, beta > 1`.
pub fn beta_integral_complex_p2(alpha: f64, beta: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha > 1.0 && beta > 1.0) {
        return Err(Error::domain("complex beta integral requires alpha, beta > 1"));
    }
    let eval = |n: usize| -> f64 {
        let (xs, xw) = scaled_nodes(n, 0.0, 1.0);
        let (_, tw) = scaled_nodes(n, 0.0, 2.0 * core::f64::consts::PI);
        let x3f: Vec<f64> = xs
            .iter()
            .zip(&xw)
            .map(|(&x, &w)| {
                w * x.powf(alpha - 2.0) * (1.0 - x).powf(beta - 2.0) * x * (1.0 - x)
            })
            .collect();
        let vf: Vec<f64> = xs
            .iter()
            .zip(&xw)
            .map(|(&v, &w)| w * v.powf(alpha - 2.0) * (1.0 - v).powf(beta - 2.0))
            .collect();
        let r_sum: f64 = xs
            .iter()
            .zip(&xw)
            .map(|(&r, &w)| w * r * (1.0 - r * r).powf(alpha + beta - 3.0))
            .sum();
        let theta_sum: f64 = tw.iter().sum();
        let mut total = 0.0;
        for a in &x3f {
            for b in &vf {
                total += a * b * r_sum * theta_sum;
            }
        }
        total
    };
    let n = spec.nodes_per_axis;
    converge(eval(n), eval(2 * n))
}

/// Tanh-sinh (double exponential) quadrature on a finite interval, used for
/// the order-1 Kober integrals where the integrand carries integrable
/// endpoint singularities.
///
/// The integrand receives `(x, x - a, b - x)` with both distances computed
/// through `delta = d (1 - tanh|u|) = 2 d q / (1 + q)`, `q = e^(-2|u|)`,
/// which stays exact far below one ulp of the endpoints; singular kernel
/// factors must be built from the distances, not from `x`. Refines the level
/// until the value moves by less than `abs_tol`; non-finite integrand values
/// (possible only at extreme nodes where the weight is already negligible)
/// are skipped.
pub(crate) fn tanh_sinh(
    f: &dyn Fn(f64, f64, f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<f64> {
    let d = 0.5 * (b - a);
    let width = b - a;
    let t_max = 3.6f64;
    let mut prev = f64::NAN;
    for level in 3..=12u32 {
        let steps = 1i64 << level;
        let h = t_max / steps as f64;
        let mut sum = 0.0;
        for k in -steps..=steps {
            let t = k as f64 * h;
            let u = core::f64::consts::FRAC_PI_2 * t.sinh();
            let q = (-2.0 * u.abs()).exp();
            let delta = 2.0 * d * q / (1.0 + q);
            let w = d * 2.0 * core::f64::consts::PI * t.cosh() * q / ((1.0 + q) * (1.0 + q));
            if w < 1e-300 || delta <= 0.0 {
                continue;
            }
            let (x, dist_a, dist_b) = if k >= 0 {
                (b - delta, width - delta, delta)
            } else {
                (a + delta, delta, width - delta)
            };
            let v = f(x, dist_a, dist_b);
            if v.is_finite() {
                sum += w * v;
            }
        }
        let value = sum * h;
        if level > 4 && (value - prev).abs() <= abs_tol.max(1e-14 * value.abs()) {
            return Ok(value);
        }
        prev = value;
    }
    Err(Error::NonconvergedQuadrature(format!(
        "tanh-sinh did not reach abs tol {abs_tol:.1e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigamma::{complex_multigamma, real_matrix_beta, real_multigamma};
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    #[test]
    fn gauss_legendre_basics() {
        // degree-2n-1 exactness: integrate x^5 - x^2 + 3 on (-1,1) -> 16/3...
        // actually int x^5 = 0, int -x^2 = -2/3, int 3 = 6
        let (x, w) = gauss_legendre(16);
        let val: f64 = x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * (xi.powi(5) - xi * xi + 3.0))
            .sum();
        assert_relative_eq!(val, 6.0 - 2.0 / 3.0, epsilon = 1e-13);
        let wsum: f64 = w.iter().sum();
        assert_relative_eq!(wsum, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(8, 40.0).is_err());
        assert!(QuadratureSpec::new(32, 10.0).is_err());
        assert!(QuadratureSpec::new(16, 30.0).is_ok());
    }

    #[test]
    fn real_gamma_examples() {
        let spec = QuadratureSpec::default();
        assert_relative_eq!(
            gamma_integral_real_p2(2.0, &spec).unwrap(),
            PI / 2.0,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            gamma_integral_real_p2(3.0, &spec).unwrap(),
            3.0 * PI / 2.0,
            max_relative = 1e-6
        );
        // the (1-r^2)^0.1 endpoint exponent converges slowly; use a finer grid
        let fine = QuadratureSpec::new(384, 40.0).unwrap();
        assert_relative_eq!(
            gamma_integral_real_p2(1.6, &fine).unwrap(),
            real_multigamma(2, 1.6).unwrap(),
            max_relative = 1e-5
        );
        assert!(gamma_integral_real_p2(0.4, &spec).is_err());
    }

    #[test]
    fn complex_gamma_examples() {
        let spec = QuadratureSpec::default();
        assert_relative_eq!(
            gamma_integral_complex_p2(3.0, &spec).unwrap(),
            2.0 * PI,
            max_relative = 1e-7
        );
        assert_relative_eq!(
            gamma_integral_complex_p2(2.0, &spec).unwrap(),
            PI,
            max_relative = 1e-7
        );
        assert_relative_eq!(
            gamma_integral_complex_p2(4.5, &spec).unwrap(),
            complex_multigamma(2, 4.5).unwrap(),
            max_relative = 1e-6
        );
        assert!(gamma_integral_complex_p2(1.0, &spec).is_err());
    }

    #[test]
    fn real_beta_examples() {
        let spec = QuadratureSpec::default();
        assert_relative_eq!(
            beta_integral_real_p2(1.5, 1.5, &spec).unwrap(),
            PI / 6.0,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            beta_integral_real_p2(2.0, 2.0, &spec).unwrap(),
            real_matrix_beta(2, 2.0, 2.0).unwrap(),
            max_relative = 1e-5
        );
        assert_relative_eq!(
            beta_integral_real_p2(2.0, 1.5, &spec).unwrap(),
            real_matrix_beta(2, 2.0, 1.5).unwrap(),
            max_relative = 1e-5
        );
    }

    #[test]
    fn complex_beta_examples() {
        let spec = QuadratureSpec::default();
        assert_relative_eq!(
            beta_integral_complex_p2(2.0, 2.0, &spec).unwrap(),
            PI / 12.0,
            max_relative = 1e-7
        );
        assert_relative_eq!(
            beta_integral_complex_p2(3.0, 2.0, &spec).unwrap(),
            PI / 72.0,
            max_relative = 1e-7
        );
        assert_relative_eq!(
            beta_integral_complex_p2(2.5, 2.5, &spec).unwrap(),
            crate::multigamma::complex_matrix_beta(2, 2.5, 2.5).unwrap(),
            max_relative = 1e-5
        );
    }

    #[test]
    fn tail_bound_rejects_small_cutoff() {
        let spec = QuadratureSpec::new(32, 30.0).unwrap();
        // alpha = 16 pushes substantial gamma mass beyond R = 30
        assert!(matches!(
            gamma_integral_complex_p2(16.0, &spec),
            Err(Error::NonconvergedQuadrature(_))
        ));
    }

    #[test]
    fn tanh_sinh_known_integrals() {
        // smooth
        let v = tanh_sinh(&|x: f64, _, _| x.exp(), 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(v, core::f64::consts::E - 1.0, epsilon = 1e-11);
        // endpoint singularity 1/sqrt(x)
        let v = tanh_sinh(&|_, da: f64, _| da.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-11);
        // both endpoints singular: Beta(1/2, 1/2) = pi
        let v = tanh_sinh(&|_, da: f64, db: f64| (da * db).powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(v, PI, epsilon = 1e-11);
        // shifted interval
        let v = tanh_sinh(&|x: f64, _, _| x * x, 1.0, 3.0, 1e-12).unwrap();
        assert_relative_eq!(v, 26.0 / 3.0, epsilon = 1e-11);
    }
}

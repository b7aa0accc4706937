//! Kober fractional integral operators of the first and second kind for
//! Hermitian positive definite matrix argument.
//!
//! The first kind integrates over the bounded interval `O < V < U`, the second
//! over the unbounded cone `V > U`:
//!
//! ```text
//! K1 f = |det U|^(-a-b) / G~_p(a) * int_{V<U} |det V|^b   |det(U-V)|^(a-p) f(V) dV
//! K2 f = |det U|^b      / G~_p(a) * int_{V>U} |det V|^(-b-a) |det(V-U)|^(a-p) f(V) dV
//! ```
//!
//! Closed forms exist for determinant-power and hypergeometric integrands and
//! are implemented next to a direct numerical evaluation of the defining
//! integral: adaptive quadrature at order 1, Monte-Carlo at order 2. Both
//! numerical routes run in the coordinates produced by the same substitution
//! chain the closed-form reductions use (`W = U^(-1/2) V U^(-1/2)` for the
//! first kind; `W = V - U`, `T = U^(-1/2) W U^(-1/2)` for the second, followed
//! by `S = I - (I+T)^(-1)` which maps the cone onto `(O, I)` with the
//! Hermitian-inverse Jacobian `|det(I-S)|^(-2p)`), so the agreement check
//! exercises every transformation factor the closed forms rely on.

use alloc::sync::Arc;
use core::cell::Cell;
#[allow(unused_imports)] // f64 math via the trait in no_std builds
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::integrate::{
    box_volume, draw_box_hermitian, mc_mean_with_acceptance, tanh_sinh, McConfig, McEstimate,
    QuadratureSpec,
};
use crate::multigamma::complex_multigamma;
use crate::special::gamma;
use crate::zonal::{hyp_pfq, HypSeriesSpec};

/// Integrand families the operators are evaluated for. The determinant-power
/// families have closed forms; `Custom` is accepted by the numerical route
/// only.
#[derive(Clone)]
pub enum IntegrandDescriptor {
    /// `f(V) = |det V|^gamma`
    DetPower { gamma: f64 },
    /// `f(V) = |det V|^-gamma`
    DetPowerNeg { gamma: f64 },
    /// `f(V) = |det(I - V)|^-gamma`
    DetOneMinusPower { gamma: f64 },
    /// `f(V) = |det V|^gamma |det(I - V)|^-delta`
    DetPowerTimesOneMinus { gamma: f64, delta: f64 },
    /// `f(V) = rFs(a; b; V)`
    HypSeries(HypSeriesSpec),
    /// Black-box integrand.
    Custom(Arc<dyn Fn(&HermitianMatrix) -> f64 + Send + Sync>),
}

impl core::fmt::Debug for IntegrandDescriptor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::DetPower { gamma } => write!(f, "DetPower({gamma})"),
            Self::DetPowerNeg { gamma } => write!(f, "DetPowerNeg({gamma})"),
            Self::DetOneMinusPower { gamma } => write!(f, "DetOneMinusPower({gamma})"),
            Self::DetPowerTimesOneMinus { gamma, delta } => {
                write!(f, "DetPowerTimesOneMinus({gamma}, {delta})")
            }
            Self::HypSeries(spec) => write!(f, "HypSeries({spec:?})"),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl IntegrandDescriptor {
    /// Evaluates `f(V)`.
    pub fn eval(&self, v: &HermitianMatrix) -> Result<f64> {
        let p = v.order();
        Ok(match self {
            Self::DetPower { gamma } => v.abs_det().powf(*gamma),
            Self::DetPowerNeg { gamma } => v.abs_det().powf(-*gamma),
            Self::DetOneMinusPower { gamma } => HermitianMatrix::identity(p)
                .sub(v)
                .abs_det()
                .powf(-*gamma),
            Self::DetPowerTimesOneMinus { gamma, delta } => {
                v.abs_det().powf(*gamma)
                    * HermitianMatrix::identity(p).sub(v).abs_det().powf(-*delta)
            }
            Self::HypSeries(spec) => hyp_pfq(spec, v)?.0,
            Self::Custom(f) => f(v),
        })
    }
}

/// First kind integrates over `V < U`; second kind over `V > U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KoberKind {
    First,
    Second,
}

/// Full description of one operator application.
#[derive(Debug, Clone)]
pub struct KoberRequest {
    kind: KoberKind,
    alpha: f64,
    beta: f64,
    f: IntegrandDescriptor,
    u: HermitianMatrix,
}

impl KoberRequest {
    /// Requires `alpha > p - 1` and a positive definite, decently conditioned
    /// anchor `U` (its inverse square root enters every reduction).
    pub fn new(
        kind: KoberKind,
        alpha: f64,
        beta: f64,
        f: IntegrandDescriptor,
        u: HermitianMatrix,
    ) -> Result<Self> {
        let p = u.order();
        if !(alpha > p as f64 - 1.0) {
            return Err(Error::domain("kober order requires alpha > p - 1"));
        }
        if !u.is_positive_definite() {
            return Err(Error::domain("anchor U must be positive definite"));
        }
        if u.condition_number() >= 1e6 {
            return Err(Error::domain("anchor U is too ill-conditioned"));
        }
        Ok(KoberRequest {
            kind,
            alpha,
            beta,
            f,
            u,
        })
    }

    pub fn kind(&self) -> KoberKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn integrand(&self) -> &IntegrandDescriptor {
        &self.f
    }

    pub fn anchor(&self) -> &HermitianMatrix {
        &self.u
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }

    fn require_kind(&self, kind: KoberKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::domain("request kind does not match this closed form"));
        }
        Ok(())
    }

    fn require_u_below_identity(&self) -> Result<()> {
        let p = self.order();
        if !HermitianMatrix::identity(p)
            .sub(&self.u)
            .is_positive_definite()
        {
            return Err(Error::domain("this case requires O < U < I"));
        }
        Ok(())
    }
}

/// Second kind with `f(V) = |det V|^-gamma`:
/// `|det U|^-gamma G~_p(beta+gamma) / G~_p(alpha+beta+gamma)`,
/// for `beta + gamma > p - 1`.
pub fn kober2_detpower_closed(req: &KoberRequest) -> Result<f64> {
    req.require_kind(KoberKind::Second)?;
    let IntegrandDescriptor::DetPowerNeg { gamma } = req.f else {
        return Err(Error::domain("expected f = |det V|^-gamma"));
    };
    let p = req.order();
    if !(req.beta + gamma > p as f64 - 1.0) {
        return Err(Error::domain("requires beta + gamma > p - 1"));
    }
    Ok(req.u.abs_det().powf(-gamma) * complex_multigamma(p, req.beta + gamma)?
        / complex_multigamma(p, req.alpha + req.beta + gamma)?)
}

/// First kind, special case `f(V) = |det V|^gamma`:
/// `|det U|^gamma G~_p(beta+gamma+p) / G~_p(alpha+beta+gamma+p)`,
/// for `beta + gamma > -1`.
pub fn kober1_case1_closed(req: &KoberRequest) -> Result<f64> {
    req.require_kind(KoberKind::First)?;
    let IntegrandDescriptor::DetPower { gamma } = req.f else {
        return Err(Error::domain("expected f = |det V|^gamma"));
    };
    let p = req.order();
    let pf = p as f64;
    if !(req.beta + gamma > -1.0) {
        return Err(Error::domain("requires beta + gamma > -1"));
    }
    Ok(req.u.abs_det().powf(gamma) * complex_multigamma(p, req.beta + gamma + pf)?
        / complex_multigamma(p, req.alpha + req.beta + gamma + pf)?)
}

/// First kind, special case `f(V) = |det(I-V)|^-gamma`:
/// `G~_p(beta+p)/G~_p(alpha+beta+p) 2F1(beta+p, gamma; alpha+beta+p; U)`,
/// for `beta > -1` and `O < U < I`. Returns the value and the series tail
/// bound at truncation degree `k_max`.
pub fn kober1_case2_closed(req: &KoberRequest, k_max: usize) -> Result<(f64, f64)> {
    req.require_kind(KoberKind::First)?;
    let IntegrandDescriptor::DetOneMinusPower { gamma } = req.f else {
        return Err(Error::domain("expected f = |det(I-V)|^-gamma"));
    };
    if !(req.beta > -1.0) {
        return Err(Error::domain("requires beta > -1"));
    }
    req.require_u_below_identity()?;
    let p = req.order();
    let pf = p as f64;
    let prefactor = complex_multigamma(p, req.beta + pf)?
        / complex_multigamma(p, req.alpha + req.beta + pf)?;
    let spec = HypSeriesSpec::new(
        alloc::vec![req.beta + pf, gamma],
        alloc::vec![req.alpha + req.beta + pf],
        k_max,
    )?;
    let (value, tail) = hyp_pfq(&spec, &req.u)?;
    Ok((prefactor * value, prefactor.abs() * tail))
}

/// First kind, special case `f(V) = |det V|^gamma |det(I-V)|^-delta`:
/// `|det U|^gamma G~_p(beta+gamma+p)/G~_p(alpha+beta+gamma+p)
///  2F1(beta+gamma+p, delta; alpha+beta+gamma+p; U)`,
/// for `beta + gamma > -1` and `O < U < I`.
pub fn kober1_case3_closed(req: &KoberRequest, k_max: usize) -> Result<(f64, f64)> {
    req.require_kind(KoberKind::First)?;
    let IntegrandDescriptor::DetPowerTimesOneMinus { gamma, delta } = req.f else {
        return Err(Error::domain("expected f = |det V|^gamma |det(I-V)|^-delta"));
    };
    if !(req.beta + gamma > -1.0) {
        return Err(Error::domain("requires beta + gamma > -1"));
    }
    req.require_u_below_identity()?;
    let p = req.order();
    let pf = p as f64;
    let det_u_pow = req.u.abs_det().powf(gamma);
    let prefactor = det_u_pow * complex_multigamma(p, req.beta + gamma + pf)?
        / complex_multigamma(p, req.alpha + req.beta + gamma + pf)?;
    let spec = HypSeriesSpec::new(
        alloc::vec![req.beta + gamma + pf, delta],
        alloc::vec![req.alpha + req.beta + gamma + pf],
        k_max,
    )?;
    let (value, tail) = hyp_pfq(&spec, &req.u)?;
    Ok((prefactor * value, prefactor.abs() * tail))
}

/// First kind, special case `f(V) = rFs(a1..ar; b1..bs; V)`:
/// `G~_p(beta+p)/G~_p(alpha+beta+p)
///  (r+1)F(s+1)(a1..ar, beta+p; b1..bs, alpha+beta+p; U)`,
/// for `O < U < I`.
pub fn kober1_case4_closed(req: &KoberRequest) -> Result<(f64, f64)> {
    req.require_kind(KoberKind::First)?;
    let IntegrandDescriptor::HypSeries(ref spec) = req.f else {
        return Err(Error::domain("expected a hypergeometric integrand"));
    };
    req.require_u_below_identity()?;
    let p = req.order();
    let pf = p as f64;
    let prefactor = complex_multigamma(p, req.beta + pf)?
        / complex_multigamma(p, req.alpha + req.beta + pf)?;
    let promoted = spec.promoted(req.beta + pf, req.alpha + req.beta + pf)?;
    let (value, tail) = hyp_pfq(&promoted, &req.u)?;
    Ok((prefactor * value, prefactor.abs() * tail))
}

/// Configuration of the direct numerical route: quadrature at order 1,
/// Monte-Carlo at order 2.
#[derive(Debug, Clone, Copy)]
pub enum KoberNumericConfig {
    Quadrature(QuadratureSpec),
    MonteCarlo(McConfig),
}

/// Direct numerical evaluation of the defining integral of `req`.
///
/// Order 1 runs adaptive tanh-sinh quadrature to an absolute error of 1e-9
/// and reports `std_error = 0`. Order 2 Monte-Carlo samples the box around
/// the transformed interval `(O, I)` exactly as the beta estimators do.
/// Orders above 2 are unsupported. A hypergeometric integrand over the
/// unbounded second-kind domain is rejected: its series does not converge
/// (or cannot be tail-checked) for arbitrarily large argument.
pub fn kober_numeric(req: &KoberRequest, cfg: &KoberNumericConfig) -> Result<McEstimate> {
    if let IntegrandDescriptor::HypSeries(spec) = &req.f {
        match req.kind {
            KoberKind::Second => {
                return Err(Error::domain(
                    "hypergeometric integrand is not evaluable over V > U",
                ))
            }
            KoberKind::First => {
                if spec.a_params().len() == spec.b_params().len() + 1
                    && req.u.spectral_norm() >= 1.0
                {
                    return Err(Error::NormTooLarge);
                }
            }
        }
    }
    match (req.order(), cfg) {
        (1, KoberNumericConfig::Quadrature(_)) => kober_numeric_p1(req),
        (1, KoberNumericConfig::MonteCarlo(_)) => Err(Error::domain(
            "order 1 runs deterministic quadrature; pass a quadrature config",
        )),
        (2, KoberNumericConfig::MonteCarlo(mc)) => kober_numeric_p2(req, mc),
        (2, KoberNumericConfig::Quadrature(_)) => Err(Error::domain(
            "order 2 runs Monte-Carlo; pass a Monte-Carlo config",
        )),
        (p, _) => Err(Error::UnsupportedOrder(p)),
    }
}

fn kober_numeric_p1(req: &KoberRequest) -> Result<McEstimate> {
    let u = req.u.at(0, 0).re;
    let (alpha, beta) = (req.alpha, req.beta);
    let f = &req.f;
    let failure: Cell<Option<Error>> = Cell::new(None);
    let eval_f = |v: f64| -> f64 {
        match f.eval(&HermitianMatrix::real_diagonal(&[v])) {
            Ok(x) => x,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let value = match req.kind {
        KoberKind::First => {
            // the kernel factors are singular at the interval ends; build
            // them from the stable endpoint distances
            let integrand =
                |v: f64, da: f64, db: f64| da.powf(beta) * db.powf(alpha - 1.0) * eval_f(v);
            let integral = tanh_sinh(&integrand, 0.0, u, 1e-9)?;
            u.powf(-alpha - beta) / gamma(alpha) * integral
        }
        KoberKind::Second => {
            // v = u / t maps (u, inf) onto t in (0, 1); v - u = u (1-t)/t
            let integrand = |t: f64, da: f64, db: f64| {
                let v = u / t;
                let v_minus_u = u * db / t;
                v.powf(-beta - alpha) * v_minus_u.powf(alpha - 1.0) * eval_f(v) * u / (da * t)
            };
            let integral = tanh_sinh(&integrand, 0.0, 1.0, 1e-9)?;
            u.powf(beta) / gamma(alpha) * integral
        }
    };
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(McEstimate {
        value,
        std_error: 0.0,
        n: 0,
    })
}

fn kober_numeric_p2(req: &KoberRequest, cfg: &McConfig) -> Result<McEstimate> {
    let p = req.order();
    let pf = p as f64;
    let u_sqrt = req.u.pd_sqrt()?.to_matrix();
    let identity = HermitianMatrix::identity(p);
    let norm = complex_multigamma(p, req.alpha)?;
    let vol = box_volume(p);
    let f = &req.f;
    let failure: Cell<Option<Error>> = Cell::new(None);
    let eval_f = |v: &HermitianMatrix| -> f64 {
        match f.eval(v) {
            Ok(x) => x,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let kind = req.kind;
    let (alpha, beta) = (req.alpha, req.beta);
    let (estimate, acceptance) = mc_mean_with_acceptance(cfg, |rng| {
        let w = draw_box_hermitian(p, rng);
        let one_minus = identity.sub(&w);
        if !w.is_positive_definite() || !one_minus.is_positive_definite() {
            return (0.0, 0.0);
        }
        let value = match kind {
            KoberKind::First => {
                // V = U^(1/2) W U^(1/2)
                let v = w.congruence(&u_sqrt);
                w.abs_det().powf(beta) * one_minus.abs_det().powf(alpha - pf) * eval_f(&v)
            }
            KoberKind::Second => {
                // S = W; V = U^(1/2) (I-S)^(-1) U^(1/2); the inverse map
                // carries |det(I-S)|^(-2p), already folded into the exponent
                let inv = one_minus.inverse().expect("interior point is nonsingular");
                let v = inv.congruence(&u_sqrt);
                w.abs_det().powf(alpha - pf) * one_minus.abs_det().powf(beta - pf) * eval_f(&v)
            }
        };
        (vol * value / norm, 1.0)
    });
    if let Some(e) = failure.take() {
        return Err(e);
    }
    if acceptance < 1e-3 {
        return Err(Error::RejectionTooLow);
    }
    Ok(estimate)
}

//! Direct numerical evaluation of the matrix-variate gamma and beta
//! integrals: deterministic tensor quadrature of the explicit order-2
//! parametrizations, and Monte-Carlo estimation over the positive definite
//! cone and the `(O, I)` interval for orders 1..3.

mod mc;
mod quadrature;

pub use mc::{
    mc_beta_integral, mc_gamma_integral, McConfig, McEstimate,
    BetaRepresentation,
};
pub use quadrature::{
    beta_integral_complex_p2, beta_integral_real_p2, gamma_integral_complex_p2,
    gamma_integral_real_p2, gauss_legendre, QuadratureSpec,
};

#[cfg(test)]
pub(crate) use mc::batch_rng;
pub(crate) use mc::{box_volume, draw_box_hermitian, mc_mean_with_acceptance, reference_shape};
pub(crate) use quadrature::tanh_sinh;

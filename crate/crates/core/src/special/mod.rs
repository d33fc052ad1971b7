//! Special functions and quadrature. Kernels are generic over [`Scalar`](crate::Scalar).

mod bernoulli;
mod bessel;
mod gamma;
mod hurwitz;
mod incgamma;
mod quadrature;

pub use bessel::{bessel_k, bessel_k_trapezoid, bessel_k_with_error, BESSEL_MAX_IM_ORDER};
pub use gamma::{gamma, log_gamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_regular, hurwitz_zeta_with_terms};
pub use incgamma::{exp_integral_e1, upper_incomplete_gamma};
pub use quadrature::{gauss_legendre, QuadratureRule};

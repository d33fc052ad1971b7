//! Toroidal periods of real-analytic Eisenstein series over Q.
//!
//! The crate computes integrals of the completed Eisenstein series `E*(z,s)`
//! along closed geodesics (real quadratic tori) and sums over Heegner points
//! (imaginary quadratic tori), compares them with products of completed
//! L-functions, and classifies Eisenstein series, their residues and ingested
//! cuspidal L-data as toroidal or not. A double Dirichlet series over
//! quadratic twists supplies the non-vanishing-twist machinery.
//!
//! Module map:
//!
//! - [`arithmetic`]: Kronecker symbols, Möbius, class data, geodesics, Heegner points.
//! - [`special`]: complex Γ, incomplete Γ, `K_ν`, Gauss–Legendre, Hurwitz ζ.
//! - [`lfun`]: ζ, Dirichlet L, completed L-functions, derivatives, zeros, coefficient files.
//! - [`eisenstein`]: `E*(z,s)`, fundamental-domain reduction, residue at the pole.
//! - [`periods`]: toroidal periods, calibration ratios, residue periods.
//! - [`ddseries`]: weighted double Dirichlet series over odd `d`, residue at `w = 1`.
//! - [`toroidal`]: verdicts for Eisenstein series, residues and cusp data.
//!
//! The special-function kernels are generic over [`Scalar`]; everything above
//! them runs in double precision through the aliases below.

// `!(x >= y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arithmetic;
pub mod ddseries;
pub mod eisenstein;
mod error;
pub mod lfun;
pub mod periods;
mod scalar;
pub mod special;
pub mod toroidal;

pub use error::{Error, ErrorKind, Result};
pub use scalar::Scalar;

/// Real scalar used by the analytic layers.
pub type Real = f64;

/// Complex scalar used by the analytic layers.
pub type Complex = num_complex::Complex<f64>;

/// Hard bound on `|D|` for class and form searches.
pub const MAX_ABS_DISCRIMINANT: i64 = 1_000_000;

/// Largest `|Im s|` accepted by the L-function layer.
pub const MAX_IM_S: f64 = 60.0;

/// Largest `|Im s|` accepted by the Eisenstein layer (`|Im ν| ≤ 40` for `K_ν`).
pub const MAX_IM_S_EISENSTEIN: f64 = 40.0;

/// Largest derivative order accepted by the Cauchy differentiator.
pub const MAX_DERIVATIVE_ORDER: usize = 4;

/// Shorthand for building a [`Complex`].
#[inline]
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

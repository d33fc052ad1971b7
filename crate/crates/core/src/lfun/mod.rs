//! ζ, Dirichlet L-functions of quadratic characters, completed L-functions
//! with derivatives and critical zeros, and ingested degree-2 data with
//! quadratic twists.
//!
//! Everything is in unitary normalization (center `1/2`). For a fundamental
//! discriminant `D`, `χ_D` is the Kronecker symbol `(D/·)`; non-fundamental
//! inputs are mapped to the discriminant of `Q(√d)` by the callers that accept
//! them, never here.

mod calculus;
mod completed;
mod dirichlet;
mod generic;

pub use calculus::{
    cauchy_derivative, control_scale, derivative, find_zeros, stable_derivative, vanishing_order, CriticalZero,
    OrderEstimate, CAUCHY_POINTS, CAUCHY_RADIUS, CAUCHY_TOL, CONTROL_RADIUS, ORDER_NONZERO, ORDER_ZERO,
    ZERO_BISECT_TOL, ZERO_SCAN_STEP,
};
pub use completed::{
    completed, functional_equation_check, load_lfunction, quadratic_twist, CharacterPoint, CompletedL, LKind,
    FE_CHECK_POINTS, FE_CHECK_TOL,
};
pub(crate) use completed::xi;
pub use dirichlet::{dirichlet_l, zeta};
pub use generic::{parse_lfunction, GenericL, LData, Normalization, PrimeEntry};

//! Toroidality verdicts.
//!
//! A function is toroidal when all its torus periods vanish. Each decision
//! here reduces to vanishing of completed L-functions, judged relative to the
//! median magnitude on a radius-1/2 circle around the point.
//!
//! Order convention: `Λ` has order `m` at `s0` when `Λ^{(i)}(s0) = 0` for
//! `i < m` and `Λ^{(m)}(s0) ≠ 0`. The `n`-th `s`-derivative of `E*` is toroidal
//! exactly when `Λ_ζ` has order at least `n + 1` at `s0`:
//!
//! - `n = 0`: `E*(·, s0)` is toroidal iff `Λ_ζ(s0) = 0`.
//! - `n = 1`: `∂_s E*` is toroidal iff `Λ_ζ(s0) = Λ_ζ'(s0) = 0`, so a simple
//!   zero does not suffice.
//!
//! Verdicts are numerical classifications with explicit thresholds, backed by
//! a finite certificate of tori. They prove nothing about true vanishing.

use rayon::prelude::*;

use crate::arithmetic::{fundamental_discriminants, QuadChar};
use crate::lfun::{
    completed, control_scale, quadratic_twist, stable_derivative, vanishing_order, CompletedL, LKind, CAUCHY_RADIUS,
    CONTROL_RADIUS,
};
use crate::periods::residue_period;
use crate::{c64, Complex, Error, Result};

/// A value vanishes when at most this multiple of its control scale.
pub const VANISHING_TOL: f64 = 1e-5;

/// Absolute floor below which a residue period counts as zero.
pub const RESIDUE_TOL: f64 = 1e-6;

/// Tori reported for Eisenstein verdicts.
pub const EISENSTEIN_WITNESSES: [i64; 2] = [5, -4];

/// Tori reported for the residue verdict.
pub const RESIDUE_WITNESSES: [i64; 4] = [5, -4, -23, 13];

/// Largest derivative order accepted by [`classify_eisenstein`].
pub const MAX_EISENSTEIN_ORDER: usize = 3;

/// `s0` closer than this to 0 or 1 is treated as the pole.
pub const POLE_EXCLUSION: f64 = 2.0 * CAUCHY_RADIUS;

/// What was classified.
#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    /// `∂_s^n E*(·, s)` at `s = s0`.
    Eisenstein { s0: Complex, n: usize },
    /// `Res_{s=1} E*`.
    Residue,
    /// A cuspidal degree-2 L-function.
    Cusp { label: String, root_number: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Toroidal,
    NotToroidal,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Toroidal => "toroidal",
            Verdict::NotToroidal => "not_toroidal",
        }
    }

    fn from_bool(toroidal: bool) -> Self {
        if toroidal {
            Verdict::Toroidal
        } else {
            Verdict::NotToroidal
        }
    }
}

/// One certificate row: the torus of discriminant `d`, the magnitude that
/// decides toroidality for it, and the threshold it was judged against.
///
/// `d = 1` marks the untwisted central value of a cusp form.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub d: i64,
    pub value: f64,
    pub threshold: f64,
    /// Cusp rows only: `|Λ(1/2, π ⊗ χ_D)|` and its threshold.
    pub twist_factor: Option<(f64, f64)>,
    /// Whether the object is `T_D`-toroidal according to this row. For cusp
    /// twists this holds when either factor vanishes on its own scale.
    pub vanishes: bool,
}

impl Evidence {
    fn plain(d: i64, value: f64, threshold: f64) -> Self {
        Self { d, value, threshold, twist_factor: None, vanishes: value <= threshold }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToroidalVerdict {
    pub subject: Subject,
    pub verdict: Verdict,
    pub certificate: Vec<Evidence>,
    /// Eisenstein only: the estimated order of `Λ_ζ` at `s0`.
    pub order_bound: Option<usize>,
}

fn check_away_from_poles(s0: Complex) -> Result<()> {
    if s0.norm() < POLE_EXCLUSION || (s0 - 1.0).norm() < POLE_EXCLUSION {
        return Err(Error::PoleAtSpecialPoint { re: s0.re, im: s0.im });
    }
    Ok(())
}

/// `max_{i ≤ n} |P^{(i)}(s0)| ρ^i / i!` for `P = Λ_ζ Λ(·, χ_D)`, against
/// `1e−5` times the median of `|P|` on the control circle.
fn product_row(d: i64, s0: Complex, n: usize) -> Result<Evidence> {
    let zeta = CompletedL::zeta();
    let chi = CompletedL::dirichlet(d)?;
    let product = |s: Complex| Ok(completed(&zeta, s)? * completed(&chi, s)?);
    let scale = control_scale(&product, s0, CONTROL_RADIUS)?;
    let mut value: f64 = 0.0;
    let mut factorial = 1.0;
    for i in 0..=n {
        if i > 0 {
            factorial *= i as f64;
        }
        let v = stable_derivative(&product, s0, i, CAUCHY_RADIUS)?;
        value = value.max(v.norm() * CONTROL_RADIUS.powi(i as i32) / factorial);
    }
    Ok(Evidence::plain(d, value, VANISHING_TOL * scale))
}

/// Decides whether `∂_s^n E*(·, s)|_{s0}` is toroidal, `0 ≤ n ≤ 3`.
///
/// Toroidal iff the estimated order of `Λ_ζ` at `s0` is at least `n + 1`.
/// Evidence rows carry the products `Λ_ζ Λ(·, χ_D)` for `D ∈ {5, −4}`.
pub fn classify_eisenstein(s0: Complex, n: usize) -> Result<ToroidalVerdict> {
    if n > MAX_EISENSTEIN_ORDER {
        return Err(Error::InvalidArgument(format!("derivative order {n} exceeds {MAX_EISENSTEIN_ORDER}")));
    }
    check_away_from_poles(s0)?;
    let zeta = CompletedL::zeta();
    let order = vanishing_order(&|s| completed(&zeta, s), s0)?;
    let certificate =
        EISENSTEIN_WITNESSES.par_iter().map(|&d| product_row(d, s0, n)).collect::<Result<Vec<_>>>()?;
    Ok(ToroidalVerdict {
        subject: Subject::Eisenstein { s0, n },
        verdict: Verdict::from_bool(order.order > n),
        certificate,
        order_bound: Some(order.order),
    })
}

/// The residue of `E*` at `s = 1` is never toroidal: its period over a torus
/// is the residue times the torus volume. Rows hold `|residue period|`.
pub fn classify_residue() -> Result<ToroidalVerdict> {
    let certificate = RESIDUE_WITNESSES
        .par_iter()
        .map(|&d| {
            let p = residue_period(d)?;
            Ok(Evidence::plain(d, p.direct.norm(), RESIDUE_TOL))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ToroidalVerdict { subject: Subject::Residue, verdict: Verdict::NotToroidal, certificate, order_bound: None })
}

/// `|Λ(1/2)|` and its vanishing threshold.
fn central_value(l: &CompletedL) -> Result<(f64, f64)> {
    let half = c64(0.5, 0.0);
    let value = completed(l, half)?.norm();
    let scale = control_scale(&|s| completed(l, s), half, CONTROL_RADIUS)?;
    Ok((value, VANISHING_TOL * scale))
}

/// Classifies a cusp form through its central value.
///
/// Toroidal iff `|Λ(1/2)| ≤ 1e−5 · scale`. The first row is the central value
/// itself (`d = 1`); then one row per fundamental `|D| ≤ twist_bound` prime to
/// the conductor, whose torus is toroidal iff `Λ(1/2) Λ(1/2, π ⊗ χ_D) = 0`.
/// With `ε = −1` the central value vanishes by the functional equation and
/// the verdict is toroidal whatever the coefficients.
pub fn classify_cusp(l: &CompletedL, twist_bound: i64) -> Result<ToroidalVerdict> {
    let LKind::Generic(data) = l.kind() else {
        return Err(Error::InvalidArgument("classify_cusp needs ingested degree-2 data".into()));
    };
    let root_number = data.root_number();
    let (value, threshold) = central_value(l)?;
    let forced = root_number < 0.0;
    let toroidal = forced || value <= threshold;
    let conductor = l.conductor() as i64;
    let twists: Vec<i64> = fundamental_discriminants(twist_bound)
        .filter(|&d| QuadChar::new(d).map(|c| gcd(c.conductor() as i64, conductor) == 1).unwrap_or(false))
        .collect();
    let rows = twists
        .par_iter()
        .map(|&d| {
            let (tv, tt) = central_value(&quadratic_twist(l, d)?)?;
            Ok(Evidence {
                d,
                value: value * tv,
                threshold: threshold * tt / VANISHING_TOL,
                twist_factor: Some((tv, tt)),
                vanishes: toroidal || tv <= tt,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut certificate = vec![Evidence { d: 1, value, threshold, twist_factor: None, vanishes: toroidal }];
    certificate.extend(rows);
    Ok(ToroidalVerdict {
        subject: Subject::Cusp { label: l.label(), root_number },
        verdict: Verdict::from_bool(toroidal),
        certificate,
        order_bound: None,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

//! Toroidal periods of `E*(·, s)`.
//!
//! For `D > 0` the torus is the union of the closed geodesics of the
//! `SL2(Z)`-classes of forms of discriminant `D`, each of hyperbolic length
//! `2 log ε_D`; the period is `Σ_Q ∫_0^{2 log ε_D} E*(z_Q(t), s) dt`. For
//! `D < 0` it is the sum of `E*` over the Heegner points, one per class, with
//! no automorphism weights. Either way the ratio to `Λ_ζ(s) Λ(s, χ_D)` is a
//! constant depending only on `D`; [`calibrate`] measures it.

use rayon::prelude::*;

use crate::arithmetic::class_data;
use crate::eisenstein::{eisenstein_residue, neville_at_zero, EisensteinSeries, RESIDUE_DELTAS};
use crate::lfun::{completed, stable_derivative, CompletedL, CAUCHY_RADIUS};
use crate::special::gauss_legendre;
use crate::{c64, Complex, Error, Result};

/// Largest hyperbolic length of one quadrature panel.
pub const PANEL_LENGTH: f64 = 1.0;

/// Required agreement of the order-`n` and order-`n/2` rules, relative to `1 + |value|`.
pub const QUADRATURE_TOL: f64 = 1e-7;

/// Smallest `|Λ_ζ Λ_χ|` accepted on a calibration grid.
pub const GRID_GUARD: f64 = 1e-6;

/// Highest derivative order of a period.
pub const MAX_PERIOD_DERIVATIVE: usize = 3;

const MAX_ORDER: usize = 512;

/// The period of `E*(·, s)` over the torus of discriminant `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToroidalPeriod {
    pub d: i64,
    pub s: Complex,
    pub value: Complex,
    /// One entry per form class, in the order of the reduced forms.
    pub per_class_values: Vec<Complex>,
    /// Gauss–Legendre points per panel; 0 for Heegner sums.
    pub quadrature_order: usize,
    /// `|I_n − I_{n/2}|`; 0 for Heegner sums.
    pub error_estimate: f64,
}

fn panel_integrals(series: &EisensteinSeries, d: i64, n: usize) -> Result<Vec<(Complex, Complex)>> {
    let disc = class_data(d)?;
    let full = gauss_legendre::<f64>(n)?;
    let half = gauss_legendre::<f64>(n / 2)?;
    let geodesics = disc.geodesics();
    let mut jobs = Vec::new();
    for (k, g) in geodesics.iter().enumerate() {
        let panels = (g.period_length / PANEL_LENGTH).ceil().max(1.0) as usize;
        let h = g.period_length / panels as f64;
        for p in 0..panels {
            jobs.push((k, p as f64 * h, (p + 1) as f64 * h));
        }
    }
    let parts: Vec<(usize, Complex, Complex)> = jobs
        .into_par_iter()
        .map(|(k, a, b)| {
            let g = &geodesics[k];
            let f = |t: f64| series.eval(g.point(t));
            Ok((k, full.try_integrate_complex(a, b, f)?, half.try_integrate_complex(a, b, f)?))
        })
        .collect::<Result<_>>()?;
    let mut out = vec![(c64(0.0, 0.0), c64(0.0, 0.0)); geodesics.len()];
    for (k, a, b) in parts {
        out[k].0 += a;
        out[k].1 += b;
    }
    Ok(out)
}

/// `Σ_Q ∫_0^{2 log ε_D} E*(z_Q(t), s) dt` for `D > 0` fundamental.
///
/// Panels of length at most 1 with `2(20 + ⌈|Im s|⌉)` Gauss–Legendre points
/// each, doubled until the half-order rule agrees to `1e−7 (1 + |value|)`.
pub fn geodesic_period(d: i64, s: Complex) -> Result<ToroidalPeriod> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!("geodesic periods need D > 0, got {d}")));
    }
    let series = EisensteinSeries::new(s)?;
    let mut n = 2 * (20 + s.im.abs().ceil() as usize);
    loop {
        let parts = panel_integrals(&series, d, n)?;
        let value: Complex = parts.iter().map(|p| p.0).sum();
        let coarse: Complex = parts.iter().map(|p| p.1).sum();
        let error_estimate = (value - coarse).norm();
        if error_estimate <= QUADRATURE_TOL * (1.0 + value.norm()) {
            return Ok(ToroidalPeriod {
                d,
                s,
                value,
                per_class_values: parts.into_iter().map(|p| p.0).collect(),
                quadrature_order: n,
                error_estimate,
            });
        }
        if 2 * n > MAX_ORDER {
            return Err(Error::NonConvergence(format!("geodesic period D = {d}, s = {s}: error {error_estimate}")));
        }
        n *= 2;
    }
}

/// `Σ_Q E*(z_Q, s)` over the Heegner points of `D < 0`.
pub fn heegner_period(d: i64, s: Complex) -> Result<ToroidalPeriod> {
    if d >= 0 {
        return Err(Error::InvalidArgument(format!("Heegner periods need D < 0, got {d}")));
    }
    let disc = class_data(d)?;
    let series = EisensteinSeries::new(s)?;
    let per_class_values: Vec<Complex> =
        disc.heegner_points().par_iter().map(|h| series.eval(h.z)).collect::<Result<_>>()?;
    Ok(ToroidalPeriod {
        d,
        s,
        value: per_class_values.iter().sum(),
        per_class_values,
        quadrature_order: 0,
        error_estimate: 0.0,
    })
}

/// Geodesic or Heegner period according to the sign of `d`.
pub fn toroidal_period(d: i64, s: Complex) -> Result<ToroidalPeriod> {
    if d > 0 {
        geodesic_period(d, s)
    } else {
        heegner_period(d, s)
    }
}

/// `Λ_ζ(s) Λ(s, χ_D)`.
pub fn l_product(d: i64, s: Complex) -> Result<Complex> {
    Ok(completed(&CompletedL::zeta(), s)? * completed(&CompletedL::dirichlet(d)?, s)?)
}

/// Samples of `r(s) = period(s) / (Λ_ζ(s) Λ(s, χ_D))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationRatio {
    pub d: i64,
    pub samples: Vec<(Complex, Complex)>,
    /// Mean of the sampled ratios.
    pub constant_fit: Complex,
    /// `max |r(s) − constant_fit| / |constant_fit|`.
    pub max_deviation: f64,
}

/// Measures `r(s)` on `grid`; every grid point must have `|Λ_ζ Λ_χ| ≥ 1e−6`.
pub fn calibrate(d: i64, grid: &[Complex]) -> Result<CalibrationRatio> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty calibration grid".into()));
    }
    let samples: Vec<(Complex, Complex)> = grid
        .iter()
        .map(|&s| {
            let product = l_product(d, s)?;
            if !(product.norm() >= GRID_GUARD) {
                return Err(Error::GridTooCloseToZero { re: s.re, im: s.im, value: product.norm() });
            }
            Ok((s, toroidal_period(d, s)?.value / product))
        })
        .collect::<Result<_>>()?;
    let constant_fit = samples.iter().map(|p| p.1).sum::<Complex>() / samples.len() as f64;
    let max_deviation =
        samples.iter().map(|p| (p.1 - constant_fit).norm()).fold(0.0, f64::max) / constant_fit.norm();
    Ok(CalibrationRatio { d, samples, constant_fit, max_deviation })
}

/// `∂_s^n period(D, s)` for `n ≤ 3` (Cauchy integral, radius 0.05 checked against 0.025).
pub fn period_derivative(d: i64, s: Complex, n: usize) -> Result<Complex> {
    if n > MAX_PERIOD_DERIVATIVE {
        return Err(Error::InvalidArgument(format!("period derivative order {n} exceeds {MAX_PERIOD_DERIVATIVE}")));
    }
    stable_derivative(&|z| toroidal_period(d, z).map(|p| p.value), s, n, CAUCHY_RADIUS)
}

/// Median of `|period(D, ·)|` at `s0 ± i·{0.5, 1}`, the scale against which
/// vanishing at `s0` is judged.
pub fn period_control_scale(d: i64, s0: Complex) -> Result<f64> {
    let mut mags: Vec<f64> = [-1.0, -0.5, 0.5, 1.0]
        .par_iter()
        .map(|&dt| toroidal_period(d, s0 + c64(0.0, dt)).map(|p| p.value.norm()))
        .collect::<Result<_>>()?;
    mags.sort_by(f64::total_cmp);
    Ok(0.5 * (mags[1] + mags[2]))
}

/// The torus period of the residue of `E*` at `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResiduePeriod {
    pub d: i64,
    /// `Res_{s=1} E*`, measured at `z = i`.
    pub residue_value: f64,
    /// Residue times the torus volume (`Σ` geodesic lengths, or the class number).
    pub direct: Complex,
    /// `lim_{s→1} (s−1)·period(D, s)`, extrapolated.
    pub limit: Complex,
}

impl ResiduePeriod {
    /// `|direct − limit| / max(1, |direct|)`.
    pub fn discrepancy(&self) -> f64 {
        (self.direct - self.limit).norm() / self.direct.norm().max(1.0)
    }
}

/// Period of the constant residue function, both directly and as a limit.
pub fn residue_period(d: i64) -> Result<ResiduePeriod> {
    let disc = class_data(d)?;
    let residue_value = eisenstein_residue(c64(0.0, 1.0))?;
    let volume = if disc.is_real() {
        disc.geodesics().iter().map(|g| g.period_length).sum()
    } else {
        disc.class_number() as f64
    };
    let samples: Vec<(f64, Complex)> = RESIDUE_DELTAS
        .par_iter()
        .map(|&delta| toroidal_period(d, c64(1.0 + delta, 0.0)).map(|p| (delta, p.value * delta)))
        .collect::<Result<_>>()?;
    let limit = *neville_at_zero(&samples).last().unwrap();
    Ok(ResiduePeriod { d, residue_value, direct: c64(residue_value * volume, 0.0), limit })
}

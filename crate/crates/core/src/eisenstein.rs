//! The completed level-1 real-analytic Eisenstein series
//!
//! `E*(z,s) = ξ(2s) y^s + ξ(2−2s) y^{1−s} + 4√y Σ_{n≥1} n^{s−1/2} σ_{1−2s}(n) K_{s−1/2}(2πny) cos(2πnx)`,
//! `ξ = Λ_ζ`. Equivalently `E*(z,s) = ½ π^{−s} Γ(s) Σ'_{(c,d)} y^s / |cz+d|^{2s}` for `Re s > 1`.
//!
//! Pole convention: the classical parameter `s`, with `E*(z,s) = E*(z,1−s)`.
//! Simple poles at `s = 0` and `s = 1`; at `s = 1` the residue is the constant
//! `+1/2` (from `ξ(2−2s) ~ 1/(2(s−1))`). At `s = 1/2` the two constant terms
//! have opposite poles that cancel; near there the constant term is taken as
//! its mean over a circle around `s`, which is exact for analytic functions.

use std::f64::consts::PI;

use crate::arithmetic::divisor_power_sum;
use crate::lfun::xi;
use crate::special::bessel_k;
use crate::{c64, Complex, Error, Result, MAX_IM_S_EISENSTEIN};

/// Distance from `0` or `1` inside which `s` counts as a pole.
pub const POLE_TOL: f64 = 1e-10;

/// Offsets used to extrapolate the residue.
pub const RESIDUE_DELTAS: [f64; 3] = [0.02, 0.01, 0.005];

/// Relative size below which a Fourier term ends the sum.
const FOURIER_REL_TOL: f64 = 1e-17;

const MAX_TERMS: usize = 10_000;

/// Within this distance of `1/2` the constant term is a circle mean.
const HALF_GUARD: f64 = 0.01;
/// Radius and size of that circle; the trapezoid error is about `(0.05/0.5)^16`.
const HALF_RADIUS: f64 = 0.05;
const HALF_POINTS: usize = 16;

/// Moves `z` into `|Re z| ≤ 1/2`, `|z| ≥ 1` with translations and `z ↦ −1/z`.
pub fn reduce_to_fundamental_domain(z: Complex) -> Result<Complex> {
    if !(z.im > 0.0) || !z.re.is_finite() {
        return Err(Error::InvalidArgument(format!("point {z} is not in the upper half-plane")));
    }
    let mut z = z;
    for _ in 0..100_000 {
        z.re -= z.re.round();
        let n = z.norm_sqr();
        if n >= 1.0 {
            return Ok(z);
        }
        z = -z.conj() / n;
    }
    Err(Error::NonConvergence(format!("fundamental-domain reduction of {z}")))
}

/// `E*(·, s)` at a fixed parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinSeries {
    s: Complex,
    /// `(σ, ξ(2σ), ξ(2−2σ))`: just `σ = s`, or a circle around `s` near `1/2`.
    constant_nodes: Vec<(Complex, Complex, Complex)>,
}

impl EisensteinSeries {
    pub fn new(s: Complex) -> Result<Self> {
        if !(s.im.abs() <= MAX_IM_S_EISENSTEIN) || !s.re.is_finite() {
            return Err(Error::EnvelopeExceeded(format!(
                "|Im s| = {} exceeds {MAX_IM_S_EISENSTEIN} for Eisenstein series",
                s.im.abs()
            )));
        }
        for pole in [0.0, 1.0] {
            if (s - pole).norm() < POLE_TOL {
                return Err(Error::PoleAtSpecialPoint { re: s.re, im: s.im });
            }
        }
        let sigmas: Vec<Complex> = if (s - 0.5).norm() < HALF_GUARD {
            (0..HALF_POINTS)
                .map(|k| s + Complex::from_polar(HALF_RADIUS, 2.0 * PI * k as f64 / HALF_POINTS as f64))
                .collect()
        } else {
            vec![s]
        };
        let constant_nodes = sigmas
            .into_iter()
            .map(|sigma| Ok((sigma, xi(sigma * 2.0)?, xi(c64(2.0, 0.0) - sigma * 2.0)?)))
            .collect::<Result<_>>()?;
        Ok(Self { s, constant_nodes })
    }

    pub fn s(&self) -> Complex {
        self.s
    }

    /// `E*(z, s)`.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        self.eval_with_terms(z).map(|(v, _)| v)
    }

    /// `E*(z, s)` and the number of Fourier terms used after reduction.
    ///
    /// Terms stop once `2πny > |s − 1/2| + 5` (past the turning point of
    /// `K_ν`, so the rest decays faster than geometrically) and the last
    /// term is below `1e−17` of the accumulated magnitude.
    pub fn eval_with_terms(&self, z: Complex) -> Result<(Complex, usize)> {
        let z = reduce_to_fundamental_domain(z)?;
        let (x, y) = (z.re, z.im);
        let s = self.s;
        let nu = s - 0.5;
        let ly = y.ln();
        let constant = self
            .constant_nodes
            .iter()
            .map(|&(sigma, a, b)| a * (sigma * ly).exp() + b * ((1.0 - sigma) * ly).exp())
            .sum::<Complex>()
            / self.constant_nodes.len() as f64;
        let mut sum = c64(0.0, 0.0);
        let mut mass = constant.norm();
        let turning = nu.norm() + 5.0;
        let pref = 4.0 * y.sqrt();
        let mut n = 0usize;
        loop {
            n += 1;
            if n > MAX_TERMS {
                return Err(Error::NonConvergence(format!("Eisenstein Fourier series at z = {z}, s = {s}")));
            }
            let nf = n as f64;
            let arg = 2.0 * PI * nf * y;
            let coef = (nu * nf.ln()).exp() * divisor_power_sum(n as u64, c64(1.0, 0.0) - s * 2.0);
            let k = bessel_k(nu, arg)?;
            let size = (coef * k).norm() * pref;
            sum += coef * k * (2.0 * PI * nf * x).cos();
            mass += size;
            if arg > turning && size <= FOURIER_REL_TOL * mass {
                break;
            }
        }
        Ok((constant + sum * pref, n))
    }
}

/// `E*(z, s)`.
pub fn eisenstein_completed(z: Complex, s: Complex) -> Result<Complex> {
    EisensteinSeries::new(s)?.eval(z)
}

/// Neville extrapolation of samples `(δ_i, f_i)` to `δ = 0`; returns the
/// diagonal `P_{0}, P_{01}, P_{012}, …`.
pub(crate) fn neville_at_zero(points: &[(f64, Complex)]) -> Vec<Complex> {
    let n = points.len();
    let mut p: Vec<Complex> = points.iter().map(|&(_, f)| f).collect();
    let mut diagonal = vec![p[0]];
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (points[i].0, points[i + level].0);
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
        diagonal.push(p[0]);
    }
    diagonal
}

/// `lim_{s→1} (s−1) E*(z, s)`, extrapolated from `s = 1 + δ`, `δ ∈ {0.02, 0.01, 0.005}`.
pub fn eisenstein_residue(z: Complex) -> Result<f64> {
    let samples: Vec<(f64, Complex)> = RESIDUE_DELTAS
        .iter()
        .map(|&d| eisenstein_completed(z, c64(1.0 + d, 0.0)).map(|v| (d, v * d)))
        .collect::<Result<_>>()?;
    Ok(neville_at_zero(&samples).last().unwrap().re)
}

//! Cauchy-integral derivatives, vanishing orders and critical-line zeros.

use rayon::prelude::*;

use super::completed::{completed, CompletedL};
use crate::{c64, Complex, Error, Result, MAX_DERIVATIVE_ORDER};

/// Points on the Cauchy circle.
pub const CAUCHY_POINTS: usize = 32;
/// Default Cauchy radius.
pub const CAUCHY_RADIUS: f64 = 0.05;
/// Agreement required between radius `r` and `r/2`, relative to `|f^{(n)}| + max|f|`.
pub const CAUCHY_TOL: f64 = 1e-6;
/// Radius of the control circle used to set the local scale.
pub const CONTROL_RADIUS: f64 = 0.5;
/// Normalized Taylor coefficients above this count as nonzero.
pub const ORDER_NONZERO: f64 = 1e-4;
/// Normalized Taylor coefficients below this count as zero.
pub const ORDER_ZERO: f64 = 1e-6;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `f^{(n)}(s)` by the `M`-point trapezoid rule on `|z − s| = r`; also returns `max |f|` on the circle.
pub fn cauchy_derivative<F>(f: &F, s: Complex, n: usize, r: f64) -> Result<(Complex, f64)>
where
    F: Fn(Complex) -> Result<Complex> + Sync,
{
    let values: Vec<(Complex, Complex)> = (0..CAUCHY_POINTS)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / CAUCHY_POINTS as f64;
            let e = Complex::from_polar(1.0, theta);
            f(s + e * r).map(|v| (v, e))
        })
        .collect::<Result<_>>()?;
    let mut sum = c64(0.0, 0.0);
    let mut max = 0.0f64;
    for (v, e) in &values {
        sum += v * e.powi(-(n as i32));
        max = max.max(v.norm());
    }
    let d = sum * (factorial(n) / (CAUCHY_POINTS as f64 * r.powi(n as i32)));
    Ok((d, max))
}

/// `f^{(n)}(s)` at radius `r`, accepted only if radius `r/2` agrees.
pub fn stable_derivative<F>(f: &F, s: Complex, n: usize, r: f64) -> Result<Complex>
where
    F: Fn(Complex) -> Result<Complex> + Sync,
{
    if n > MAX_DERIVATIVE_ORDER {
        return Err(Error::InvalidArgument(format!("derivative order {n} exceeds {MAX_DERIVATIVE_ORDER}")));
    }
    if n == 0 {
        return f(s);
    }
    let (big, max_big) = cauchy_derivative(f, s, n, r)?;
    let (small, max_small) = cauchy_derivative(f, s, n, 0.5 * r)?;
    let diff = (big - small).norm();
    let scale = big.norm() + max_big.max(max_small);
    if !(diff <= CAUCHY_TOL * scale) {
        return Err(Error::DerivativeUnstable { order: n, diff: diff / scale.max(f64::MIN_POSITIVE) });
    }
    Ok(small)
}

/// `Λ^{(n)}(s)` for `0 ≤ n ≤ 4` (Cauchy integral, radius 0.05, checked against 0.025).
pub fn derivative(l: &CompletedL, s: Complex, n: usize) -> Result<Complex> {
    stable_derivative(&|z| completed(l, z), s, n, CAUCHY_RADIUS)
}

/// Median of `|f|` over 16 points of the circle `|z − s| = radius`.
pub fn control_scale<F>(f: &F, s: Complex, radius: f64) -> Result<f64>
where
    F: Fn(Complex) -> Result<Complex> + Sync,
{
    let mut mags: Vec<f64> = (0..16)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 16.0;
            f(s + Complex::from_polar(radius, theta)).map(|v| v.norm())
        })
        .collect::<Result<_>>()?;
    mags.sort_by(f64::total_cmp);
    Ok(0.5 * (mags[7] + mags[8]))
}

/// Estimated order of vanishing, with the normalized Taylor coefficients behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    pub order: usize,
    /// `|f^{(m)}(s0)| ρ^m / m!` divided by the control scale, `ρ = 0.5`, for `m ≤ order`.
    pub normalized: Vec<f64>,
    /// Median `|f|` on the control circle.
    pub scale: f64,
}

/// Order of vanishing of `f` at `s0`: the first `m` whose normalized Taylor
/// coefficient exceeds `1e−4`. Values in `(1e−6, 1e−4]` are undecidable.
pub fn vanishing_order<F>(f: &F, s0: Complex) -> Result<OrderEstimate>
where
    F: Fn(Complex) -> Result<Complex> + Sync,
{
    let scale = control_scale(f, s0, CONTROL_RADIUS)?;
    let mut normalized = Vec::new();
    for m in 0..=MAX_DERIVATIVE_ORDER {
        let d = stable_derivative(f, s0, m, CAUCHY_RADIUS)?;
        let v = d.norm() * CONTROL_RADIUS.powi(m as i32) / factorial(m) / scale;
        normalized.push(v);
        if v > ORDER_NONZERO {
            return Ok(OrderEstimate { order: m, normalized, scale });
        }
        if v > ORDER_ZERO {
            return Err(Error::OrderUndecidable { order: m, value: v });
        }
    }
    Err(Error::OrderUndecidable { order: MAX_DERIVATIVE_ORDER, value: normalized[MAX_DERIVATIVE_ORDER] })
}

/// Scan step on the critical line.
pub const ZERO_SCAN_STEP: f64 = 0.05;
/// Bisection stops at this width.
pub const ZERO_BISECT_TOL: f64 = 1e-9;

/// A zero `1/2 + it` of a completed L-function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalZero {
    pub t: f64,
    pub order: usize,
}

/// Zeros of `Λ(1/2 + it)` for `t ∈ [t0, t1]`, `t1 − t0 ≤ 50`.
///
/// `ε^{−1/2} Λ(1/2 + it)` is real for self-dual `Λ`; sign changes on a 0.05
/// grid are bisected to `1e−9`. Zeros of even order without a sign change
/// are not seen.
pub fn find_zeros(l: &CompletedL, t0: f64, t1: f64) -> Result<Vec<CriticalZero>> {
    if !(t1 >= t0) || t1 - t0 > 50.0 {
        return Err(Error::InvalidArgument(format!("zero search range [{t0}, {t1}] must have 0 <= t1 - t0 <= 50")));
    }
    if t1 == t0 {
        return Ok(Vec::new());
    }
    let rot = l.root_number().conj().sqrt();
    let z = |t: f64| completed(l, c64(0.5, t)).map(|v| v * rot);
    let steps = ((t1 - t0) / ZERO_SCAN_STEP).ceil() as usize;
    let ts: Vec<f64> = (0..=steps).map(|k| (t0 + k as f64 * ZERO_SCAN_STEP).min(t1)).collect();
    let values: Vec<Complex> = ts.par_iter().map(|&t| z(t)).collect::<Result<_>>()?;
    let max_abs = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let max_im = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if max_im > 1e-6 * max_abs {
        return Err(Error::PhaseNotConstant(max_im / max_abs));
    }
    let mut brackets = Vec::new();
    for k in 0..steps {
        let (a, b) = (values[k].re, values[k + 1].re);
        if a == 0.0 {
            brackets.push((ts[k], ts[k]));
        } else if a * b < 0.0 {
            brackets.push((ts[k], ts[k + 1]));
        }
    }
    if values[steps].re == 0.0 {
        brackets.push((ts[steps], ts[steps]));
    }
    brackets
        .into_par_iter()
        .map(|(mut lo, mut hi)| {
            let mut f_lo = z(lo)?.re;
            while hi - lo > ZERO_BISECT_TOL {
                let mid = 0.5 * (lo + hi);
                let f_mid = z(mid)?.re;
                if f_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (f_mid < 0.0) == (f_lo < 0.0) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            let est = vanishing_order(&|s| completed(l, s), c64(0.5, t))?;
            Ok(CriticalZero { t, order: est.order })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_derivative_is_the_value() {
        let l = CompletedL::zeta();
        let s = c64(0.7, 3.0);
        assert_eq!(derivative(&l, s, 0).unwrap(), completed(&l, s).unwrap());
    }

    #[test]
    fn first_derivative_matches_finite_difference() {
        let h = 1e-4;
        for (l, s) in [
            (CompletedL::zeta(), c64(0.5, 0.0)),
            (CompletedL::zeta(), c64(0.5, 14.0)),
            (CompletedL::zeta(), c64(2.0, 1.0)),
            (CompletedL::dirichlet(-4).unwrap(), c64(0.5, 0.0)),
            (CompletedL::dirichlet(-4).unwrap(), c64(0.8, 6.0)),
        ] {
            let d = derivative(&l, s, 1).unwrap();
            let fd = (completed(&l, s + h).unwrap() - completed(&l, s - h).unwrap()) / (2.0 * h);
            assert!((d - fd).norm() <= 1e-5 * (1.0 + d.norm()), "{} at {s}: {d} vs {fd}", l.label());
        }
    }

    #[test]
    fn zeta_derivatives_at_center_are_real() {
        let l = CompletedL::zeta();
        for n in 0..=4 {
            let d = derivative(&l, c64(0.5, 0.0), n).unwrap();
            assert!(d.im.abs() <= 1e-8, "n={n}: {d}");
            if n % 2 == 1 {
                // Λ(s) = Λ(1−s) forces odd derivatives at 1/2 to vanish.
                assert!(d.norm() <= 1e-8, "n={n}: {d}");
            }
        }
    }

    #[test]
    fn order_out_of_range() {
        assert!(derivative(&CompletedL::zeta(), c64(2.0, 0.0), 5).is_err());
    }

    #[test]
    fn empty_range_has_no_zeros() {
        assert!(find_zeros(&CompletedL::zeta(), 3.0, 3.0).unwrap().is_empty());
        assert!(find_zeros(&CompletedL::zeta(), 0.0, 51.0).is_err());
    }
}

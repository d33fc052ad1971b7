//! Upper incomplete gamma `Γ(a, x)` for complex `a` and real `x > 0`.

use num_complex::Complex;

use super::gamma::gamma;
use crate::{Error, Result, Scalar};

const MAX_ITER: usize = 10_000;

/// `Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt`.
///
/// Continued fraction for `x ≥ |a| + 1`, power series otherwise. For
/// `Re a ≤ 1/2` the series is run at `a + m` and brought down with
/// `Γ(a, x) = (Γ(a+1, x) − x^a e^{−x}) / a`, passing through `E₁(x)` when
/// `a` hits zero.
pub fn upper_incomplete_gamma<T: Scalar>(a: Complex<T>, x: T) -> Result<Complex<T>> {
    if !(x > T::zero()) {
        return Err(Error::InvalidArgument(format!("incomplete gamma needs x > 0, got {x}")));
    }
    if x >= a.norm() + T::one() {
        return continued_fraction(a, x);
    }
    if a.re > T::c(0.5) {
        return Ok(gamma(a)? - lower_series(a, x)?);
    }
    let m = (T::c(0.5) - a.re).ceil().to_usize().unwrap_or(0) + 1;
    let top = a + T::from_usize(m);
    let mut g = if x >= top.norm() + T::one() {
        continued_fraction(top, x)?
    } else {
        gamma(top)? - lower_series(top, x)?
    };
    let zero_tol = T::c(1e-12);
    let ex = (-x).exp();
    let lx = x.ln();
    for k in (0..m).rev() {
        let ak = a + T::from_usize(k);
        if ak.norm() <= zero_tol {
            g = Complex::new(exp_integral_e1(x)?, T::zero());
        } else {
            let xa = (ak * lx).exp() * ex;
            g = (g - xa) / ak;
        }
    }
    Ok(g)
}

/// `γ(a, x) = x^a e^{−x} Σ x^k / (a (a+1) ⋯ (a+k))`.
fn lower_series<T: Scalar>(a: Complex<T>, x: T) -> Result<Complex<T>> {
    let mut term = Complex::new(T::one(), T::zero()) / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..MAX_ITER {
        ap = ap + T::one();
        term = term * x / ap;
        sum = sum + term;
        if term.norm() <= sum.norm() * T::epsilon() {
            return Ok(sum * (a * x.ln() - x).exp());
        }
    }
    Err(Error::NonConvergence(format!("incomplete gamma series at a = {a}, x = {x}")))
}

/// Legendre continued fraction, modified Lentz.
fn continued_fraction<T: Scalar>(a: Complex<T>, x: T) -> Result<Complex<T>> {
    let tiny = T::min_positive_value() / T::epsilon();
    let one = Complex::new(T::one(), T::zero());
    let mut b = Complex::new(x + T::one(), T::zero()) - a;
    let mut c = Complex::new(T::one() / tiny, T::zero());
    let mut d = one / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = T::from_usize(i);
        let an = -(Complex::new(fi, T::zero()) - a) * fi;
        b = b + T::c(2.0);
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex::new(tiny, T::zero());
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex::new(tiny, T::zero());
        }
        d = one / d;
        let delta = d * c;
        h = h * delta;
        if (delta - one).norm() <= T::epsilon() {
            return Ok(h * (a * x.ln() - x).exp());
        }
    }
    Err(Error::NonConvergence(format!("incomplete gamma continued fraction at a = {a}, x = {x}")))
}

/// Exponential integral `E₁(x) = Γ(0, x)`.
pub fn exp_integral_e1<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::InvalidArgument(format!("E1 needs x > 0, got {x}")));
    }
    if x >= T::one() {
        return continued_fraction(Complex::new(T::zero(), T::zero()), x).map(|v| v.re);
    }
    let euler_gamma = T::c(0.577_215_664_901_532_9);
    let mut sum = T::zero();
    let mut term = T::one();
    for k in 1..MAX_ITER {
        let fk = T::from_usize(k);
        term = term * (-x) / fk;
        let add = term / fk;
        sum = sum + add;
        if add.abs() <= T::epsilon() * sum.abs() {
            return Ok(-euler_gamma - x.ln() - sum);
        }
    }
    Err(Error::NonConvergence(format!("E1 series at x = {x}")))
}

use std::f64::consts::PI;

use crate::arithmetic::QuadChar;
use crate::special::{gamma, hurwitz_zeta, hurwitz_zeta_regular};
use crate::{c64, Complex, Error, Result, MAX_IM_S};

pub(crate) fn check_envelope(s: Complex) -> Result<()> {
    if !(s.im.abs() <= MAX_IM_S) || !s.re.is_finite() {
        return Err(Error::EnvelopeExceeded(format!("|Im s| = {} exceeds {MAX_IM_S}", s.im.abs())));
    }
    Ok(())
}

/// Terms of the Borwein sum needed for `|Im s| = t`.
fn borwein_terms(t: f64) -> usize {
    ((16.0 + 0.682 * t + (1.0 + 2.0 * t).log10()) / 0.766).ceil() as usize
}

/// Alternating zeta `η(s) = Σ (−1)^k (k+1)^{−s}` by Borwein's acceleration.
fn eta(s: Complex) -> Complex {
    let n = borwein_terms(s.im.abs());
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 0..n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = c64(0.0, 0.0);
    for (k, &dk) in d[..n].iter().enumerate() {
        let w = (dk - dn) / dn;
        let t = (-s * ((k + 1) as f64).ln()).exp() * w;
        if k % 2 == 0 {
            sum -= t;
        } else {
            sum += t;
        }
    }
    sum
}

/// Riemann zeta `ζ(s)` (uncompleted), `|Im s| ≤ 60`.
///
/// For `Re s ≥ 0`: `η(s)/(1 − 2^{1−s})`, switching to Hurwitz `ζ(s,1)` where the
/// denominator is small. For `Re s < 0`: the functional equation.
pub fn zeta(s: Complex) -> Result<Complex> {
    check_envelope(s)?;
    zeta_unbounded(s)
}

/// [`zeta`] without the `|Im s|` envelope; the Eisenstein layer needs `ζ(2s)`.
pub(crate) fn zeta_unbounded(s: Complex) -> Result<Complex> {
    if s == c64(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if s.re < 0.0 {
        let r = c64(1.0, 0.0) - s;
        let factor = c64(2.0, 0.0).powc(s) * c64(PI, 0.0).powc(s - 1.0) * (s * (PI / 2.0)).sin();
        return Ok(factor * gamma(r)? * zeta_unbounded(r)?);
    }
    let denom = c64(1.0, 0.0) - c64(2.0, 0.0).powc(c64(1.0, 0.0) - s);
    if denom.norm() < 0.1 {
        return hurwitz_zeta(s, 1.0);
    }
    Ok(eta(s) / denom)
}

/// `L(s, χ_D) = |D|^{−s} Σ_{r=1}^{|D|} χ_D(r) ζ(s, r/|D|)`. `D = 1` gives `ζ(s)`.
///
/// The poles of the Hurwitz terms cancel because `Σ χ_D(r) = 0`, so the
/// regularized `ζ(s, a) − 1/(s−1)` is summed instead; this is exact and
/// works at `s = 1`.
pub fn dirichlet_l(d: i64, s: Complex) -> Result<Complex> {
    let chi = QuadChar::new(d)?;
    dirichlet_l_char(&chi, s)
}

pub(crate) fn dirichlet_l_char(chi: &QuadChar, s: Complex) -> Result<Complex> {
    if chi.is_trivial() {
        return zeta(s);
    }
    check_envelope(s)?;
    let q = chi.conductor();
    let qf = q as f64;
    let mut sum = c64(0.0, 0.0);
    for r in 1..q {
        let c = chi.eval(r as i64);
        if c == 0 {
            continue;
        }
        let h = hurwitz_zeta_regular(s, r as f64 / qf)?;
        if c > 0 {
            sum += h;
        } else {
            sum -= h;
        }
    }
    Ok(sum * (-s * qf.ln()).exp())
}

use num_complex::Complex;

use super::bernoulli::euler_maclaurin_coefficients;
use crate::{Error, Result, Scalar};

/// Number of Bernoulli correction terms (through `B_30`).
const EM_TERMS: usize = 15;

/// Shift length that keeps the Euler–Maclaurin remainder below double precision.
fn default_terms<T: Scalar>(s: Complex<T>) -> usize {
    let reach = (s + T::from_usize(2 * EM_TERMS)).norm() / (T::c(2.0) * T::PI() * T::c(0.3));
    reach.ceil().to_usize().unwrap_or(0) + 5
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k ≥ 0} (k + a)^{−s}` for `a > 0`, `s ≠ 1`.
pub fn hurwitz_zeta<T: Scalar>(s: Complex<T>, a: T) -> Result<Complex<T>> {
    hurwitz_zeta_with_terms(s, a, default_terms(s))
}

/// Euler–Maclaurin with `n` explicit terms before the tail.
pub fn hurwitz_zeta_with_terms<T: Scalar>(s: Complex<T>, a: T, n: usize) -> Result<Complex<T>> {
    if s.re == T::one() && s.im == T::zero() {
        return Err(Error::PoleAtOne);
    }
    euler_maclaurin(s, a, n, false)
}

/// `ζ(s, a) − 1/(s − 1)`, entire in `s`. Sums of these over a character with
/// `Σ χ(r) = 0` give `L(s, χ)` including at `s = 1`.
pub fn hurwitz_zeta_regular<T: Scalar>(s: Complex<T>, a: T) -> Result<Complex<T>> {
    euler_maclaurin(s, a, default_terms(s), true)
}

/// `(e^x − 1)/x`, accurate near `x = 0`.
fn exprel<T: Scalar>(x: Complex<T>) -> Complex<T> {
    if x.norm() < T::c(1e-4) {
        let one = Complex::new(T::one(), T::zero());
        one + x * T::c(0.5) + x * x / T::c(6.0) + x * x * x / T::c(24.0)
    } else {
        (x.exp() - T::one()) / x
    }
}

fn euler_maclaurin<T: Scalar>(s: Complex<T>, a: T, n: usize, regular: bool) -> Result<Complex<T>> {
    if !(a > T::zero()) {
        return Err(Error::InvalidArgument(format!("hurwitz_zeta needs a > 0, got {a}")));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut head = zero;
    for k in 0..n {
        head = head + (-s * (T::from_usize(k) + a).ln()).exp();
    }
    let w = T::from_usize(n) + a;
    let lw = w.ln();
    let w_ms = (-s * lw).exp();
    let one = Complex::new(T::one(), T::zero());
    // w^{1−s}/(s−1), or (w^{1−s} − 1)/(s−1) = −ln w · exprel((1−s) ln w) when regularized
    let pole_part = if regular {
        -exprel((one - s) * lw) * lw
    } else {
        w_ms * w / (s - one)
    };
    let mut tail = pole_part + w_ms * T::c(0.5);

    let coeffs = euler_maclaurin_coefficients();
    let mut poch = s;
    let mut pow = w_ms / w;
    let w2 = w * w;
    for (j, &c) in coeffs.iter().enumerate() {
        let term = poch * pow * T::c(c);
        tail = tail + term;
        if term.norm() <= T::epsilon() * T::c(1e-2) * (head + tail).norm() {
            break;
        }
        let k = T::from_usize(2 * j + 1);
        poch = poch * (s + k) * (s + k + T::one());
        pow = pow / w2;
    }
    Ok(head + tail)
}

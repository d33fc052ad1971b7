//! Complex log-gamma: Lanczos core on `Re z ≥ 1/2`, reflection elsewhere.

use num_complex::Complex;

use crate::{Error, Result, Scalar};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer<T: Scalar>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

/// `log Γ(z)`. `exp(log_gamma(z)) = Γ(z)`; the imaginary part is continuous
/// on the upper and lower half-planes separately.
pub fn log_gamma<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(z.re.to_f64().unwrap_or(f64::NAN)));
    }
    if z.im < T::zero() {
        return log_gamma(z.conj()).map(|v| v.conj());
    }
    if z.re < T::c(0.5) {
        // Γ(z) Γ(1−z) = π / sin(πz), with log sin(πz) evaluated stably for Im z ≥ 0:
        // sin(πz) = −e^{−iπz}(1 − e^{2iπz})/(2i)
        let pi = T::PI();
        let i = Complex::new(T::zero(), T::one());
        let e2 = (i * z * (pi + pi)).exp();
        let log_sin = -i * z * pi + ((e2 - T::one()) / (i + i)).ln();
        let reflected = log_gamma(Complex::new(T::one(), T::zero()) - z)?;
        return Ok(Complex::new(pi.ln(), T::zero()) - log_sin - reflected);
    }
    Ok(lanczos(z))
}

fn lanczos<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let zm1 = z - T::one();
    let mut series = Complex::new(T::c(LANCZOS[0]), T::zero());
    for (k, &p) in LANCZOS.iter().enumerate().skip(1) {
        series = series + Complex::new(T::c(p), T::zero()) / (zm1 + T::from_usize(k));
    }
    let t = zm1 + T::c(LANCZOS_G + 0.5);
    let half_log_two_pi = T::c(0.918_938_533_204_672_7);
    (zm1 + T::c(0.5)) * t.ln() - t + series.ln() + half_log_two_pi
}

/// `Γ(z)`.
pub fn gamma<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    log_gamma(z).map(|l| l.exp())
}

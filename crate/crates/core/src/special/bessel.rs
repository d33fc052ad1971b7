//! Modified Bessel function `K_ν(x)` for complex order and real argument.
//!
//! `K_ν(x) = ½ ∫_ℝ exp(−x cosh u + ν u) du`. For `ν = a + iμ` the integrand on
//! the real line oscillates and cancels down to `e^{−π|μ|/2}`; shifting the
//! contour to `Im u = θ` removes most of that cancellation. The integrand
//! stays decaying for `|θ| < π/2`, so the shift is exact. The shifted integral
//! is evaluated by the trapezoid rule, which converges geometrically for this
//! doubly-exponentially decaying analytic integrand.

use num_complex::Complex;

use crate::{Error, Result, Scalar};

/// Largest `|Im ν|` accepted.
pub const BESSEL_MAX_IM_ORDER: f64 = 40.0;

const MAX_HALVINGS: usize = 12;

/// Contour height `θ`: near the saddle `sin θ = μ/x`, kept a margin away from `π/2`.
fn contour_angle<T: Scalar>(nu: Complex<T>, x: T) -> T {
    let mu = nu.im.abs();
    if mu == T::zero() {
        return T::zero();
    }
    let theta0 = (mu / x).min(T::one()).asin();
    let alpha = if mu > x {
        (T::c(2.0) / (mu - x)).max(T::c(0.08))
    } else {
        T::c(0.08)
    };
    let theta = theta0.min(T::FRAC_PI_2() - alpha).max(T::zero());
    if nu.im < T::zero() {
        -theta
    } else {
        theta
    }
}

#[derive(Debug, Clone, Copy)]
struct Contour<T> {
    nu: Complex<T>,
    x: T,
    cos_t: T,
    sin_t: T,
    theta: T,
    lo: T,
    hi: T,
}

impl<T: Scalar> Contour<T> {
    fn new(nu: Complex<T>, x: T) -> Self {
        let theta = contour_angle(nu, x);
        let (sin_t, cos_t) = theta.sin_cos();
        let a = nu.re;
        let xc = x * cos_t;
        // Real part of the exponent, up to the constant −μθ.
        let g = |t: T| -xc * t.cosh() + a * t;
        let t_star = (a / xc).asinh();
        let peak = g(t_star);
        let drop = -T::epsilon().ln() + T::c(6.0);
        let mut hi = t_star + T::one();
        while g(hi) > peak - drop {
            hi = hi + T::one();
        }
        let mut lo = t_star - T::one();
        while g(lo) > peak - drop {
            lo = lo - T::one();
        }
        Self { nu, x, cos_t, sin_t, theta, lo, hi }
    }

    #[inline]
    fn integrand(&self, t: T) -> Complex<T> {
        let (sh, ch) = (t.sinh(), t.cosh());
        let re = -self.x * ch * self.cos_t + self.nu.re * t - self.nu.im * self.theta;
        let im = -self.x * sh * self.sin_t + self.nu.im * t + self.nu.re * self.theta;
        Complex::from_polar(re.exp(), im)
    }

    /// `Σ f(k h)` over `k` with `k h ∈ [lo, hi]`, restricted to odd `k` when `odd_only`.
    fn node_sum(&self, h: T, odd_only: bool) -> (Complex<T>, T) {
        let k_lo = (self.lo / h).ceil().to_i64().unwrap_or(0);
        let k_hi = (self.hi / h).floor().to_i64().unwrap_or(0);
        let mut sum = Complex::new(T::zero(), T::zero());
        let mut mass = T::zero();
        for k in k_lo..=k_hi {
            if odd_only && k.rem_euclid(2) == 0 {
                continue;
            }
            let f = self.integrand(T::c(k as f64) * h);
            sum = sum + f;
            mass = mass + f.norm();
        }
        (sum, mass)
    }
}

/// Trapezoid value `½ h Σ_k f(k h)` on the shifted contour at a fixed step.
pub fn bessel_k_trapezoid<T: Scalar>(nu: Complex<T>, x: T, h: T) -> Result<Complex<T>> {
    check_arguments(nu, x)?;
    let nu = if nu.re < T::zero() { -nu } else { nu };
    let c = Contour::new(nu, x);
    Ok(c.node_sum(h, false).0 * (h * T::c(0.5)))
}

fn check_arguments<T: Scalar>(nu: Complex<T>, x: T) -> Result<()> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("bessel_k needs x > 0, got {x}")));
    }
    if !(nu.im.abs() <= T::c(BESSEL_MAX_IM_ORDER)) || !nu.re.is_finite() {
        return Err(Error::EnvelopeExceeded(format!("bessel_k order {nu} has |Im ν| > {BESSEL_MAX_IM_ORDER}")));
    }
    Ok(())
}

/// `K_ν(x)` with an error estimate (difference of the last two step halvings).
pub fn bessel_k_with_error<T: Scalar>(nu: Complex<T>, x: T) -> Result<(Complex<T>, T)> {
    check_arguments(nu, x)?;
    // K_ν = K_{−ν}
    let nu = if nu.re < T::zero() { -nu } else { nu };
    let c = Contour::new(nu, x);
    let mut h = T::c(0.5);
    let (sum, mut mass) = c.node_sum(h, false);
    let mut value = sum * (h * T::c(0.5));
    let floor = T::epsilon() * T::c(16.0);
    for _ in 0..MAX_HALVINGS {
        h = h * T::c(0.5);
        let (odd, odd_mass) = c.node_sum(h, true);
        mass = mass + odd_mass;
        let next = value * T::c(0.5) + odd * (h * T::c(0.5));
        let diff = (next - value).norm();
        value = next;
        let cancellation_floor = floor * mass * h;
        if diff <= floor * value.norm() || diff <= cancellation_floor {
            return Ok((value, diff));
        }
    }
    Err(Error::NonConvergence(format!("bessel_k trapezoid at ν = {nu}, x = {x}")))
}

/// `K_ν(x)` for `x > 0`, `|Im ν| ≤ 40`.
pub fn bessel_k<T: Scalar>(nu: Complex<T>, x: T) -> Result<Complex<T>> {
    bessel_k_with_error(nu, x).map(|(v, _)| v)
}

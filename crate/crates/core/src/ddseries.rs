//! Double Dirichlet series over odd positive `d`, with places `S = {∞, 2}` and
//! modulus `C = 8`.
//!
//! `Z_ρ(s,w) = Σ_{d odd} L_{S∪S_d}(χ_d, s) ρ(d) a(1,s,d) d^{−w}` for the four
//! characters `ρ` of `(Z/8)^×`, and `Z⁰` sums over `d ≡ 1 mod 8` only. Here
//! `χ_d(e)` is the Jacobi symbol `(d/e)`: over `Q` the ray class group mod 8
//! has representatives `m_E ∈ {1, 3, 5, 15}` and `d/m_E` is a square in `Q_2`,
//! so the decomposition collapses to the Jacobi symbol.
//!
//! All `d`-sums are evaluated in the region of absolute convergence
//! (`Re s, Re w ≥ 1.1`). Behaviour at `w = 1` is reached only by
//! extrapolating `(w−1) Z⁰(s,w)` from the right.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::arithmetic::{fundamental_discriminants, jacobi, kronecker, moebius, squarefree_decompose};
use crate::eisenstein::neville_at_zero;
use crate::lfun::{completed, control_scale, dirichlet_l, zeta, CompletedL, CONTROL_RADIUS};
use crate::special::{log_gamma, upper_incomplete_gamma};
use crate::{c64, Complex, Error, Result};

/// Smallest `Re s`, `Re w` summed directly.
pub const MIN_CONVERGENT_RE: f64 = 1.1;
/// Smallest truncation bound.
pub const MIN_TRUNCATION: u64 = 1000;
/// Extrapolation levels may differ by at most this fraction.
pub const EXTRAPOLATION_TOL: f64 = 0.2;
/// Largest bound accepted by [`find_nonvanishing_twist`].
pub const MAX_TWIST_SEARCH: i64 = 10_000;
/// A twist counts as nonvanishing above this multiple of the local scale.
pub const TWIST_THRESHOLD: f64 = 1e-6;
/// Offsets `δ = w − 1` used by default for the residue.
pub const DEFAULT_DELTAS: [f64; 4] = [0.4, 0.3, 0.2, 0.1];

/// The ray class data for `F = Q`, `S = {∞, 2}`, `C = 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayClassSetup;

impl RayClassSetup {
    pub const MODULUS: u64 = 8;
    pub const CLASS_NUMBER: usize = 4;
    /// Ideal representatives, indexed by `d mod 8 ∈ {1, 3, 5, 7}`.
    pub const REPRESENTATIVES: [u64; 4] = [1, 3, 5, 15];

    /// The representative `m_E ≡ d mod 8` of an odd `d`.
    pub fn m_e(d: u64) -> u64 {
        assert!(d % 2 == 1, "m_E needs odd d");
        Self::REPRESENTATIVES[((d % 8) / 2) as usize]
    }
}

/// The character `ρ_k` of `(Z/8)^×`: trivial, `χ_{−4}`, `χ_8`, `χ_{−8}` for `k = 0..3`.
pub fn rho(k: usize, d: u64) -> i32 {
    const TABLE: [[i32; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
    TABLE[k][((d % 8) / 2) as usize]
}

/// A point of the double series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DDPoint {
    pub s: Complex,
    pub w: Complex,
    /// Odd `d ≤ n` are summed.
    pub n: u64,
    /// Index of `ρ`, see [`rho`].
    pub rho: usize,
}

/// A truncated sum with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DDValue {
    pub value: Complex,
    /// `2 max|c_d| N^{1−Re w}/(Re w − 1)`.
    pub tail: f64,
}

/// `χ_d(e) = (d/e)` for odd positive `d`, `e`.
pub fn chi_d(d: u64, e: u64) -> i32 {
    assert!(d % 2 == 1 && e % 2 == 1, "chi_d needs odd d and e");
    jacobi(d as i64, e as i64)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|k| k * k <= n).filter(|k| n.is_multiple_of(*k)).flat_map(|k| [k, n / k]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `a(1,s,d) = Σ_{e₁e₂ | d₁} μ(e₁) χ_d(e₁) e₁^{−s} e₂^{1−2s}`, `d = d₀ d₁²`.
pub fn weight_factor(s: Complex, d: u64) -> Complex {
    let (_, d1) = squarefree_decompose(d);
    let mut total = c64(0.0, 0.0);
    for e1 in divisors(d1) {
        let mu = moebius(e1);
        if mu == 0 {
            continue;
        }
        let chi = chi_d(d, e1);
        if chi == 0 {
            continue;
        }
        for e2 in divisors(d1 / e1) {
            let term = (-s * (e1 as f64).ln()).exp() * ((1.0 - s * 2.0) * (e2 as f64).ln()).exp();
            total += term * (mu * chi) as f64;
        }
    }
    total
}

/// The fundamental discriminant of the character `n ↦ (d₀/n)` on odd `n`.
fn primitive_discriminant(d0: u64) -> i64 {
    if d0 % 4 == 1 {
        d0 as i64
    } else {
        4 * d0 as i64
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Π_{p ∈ {2} ∪ {p | d}} (1 − χ(p) p^{−s})`.
fn removed_factors(disc: i64, primes: &[u64], s: Complex) -> Complex {
    let mut f = c64(1.0, 0.0);
    for &p in std::iter::once(&2).chain(primes.iter().filter(|&&p| p != 2)) {
        let c = kronecker(disc, p as i64);
        if c != 0 {
            f *= c64(1.0, 0.0) - (-s * (p as f64).ln()).exp() * c as f64;
        }
    }
    f
}

/// `L_{S∪S_d}(χ_d, s) = Σ_{n odd, (n,d)=1} (d/n) n^{−s}`, through the primitive
/// character `χ_{D*}` and the removed Euler factors at 2 and at `p | d`.
pub fn l_truncated(d: u64, s: Complex) -> Result<Complex> {
    if d.is_multiple_of(2) || d == 0 {
        return Err(Error::InvalidArgument(format!("l_truncated needs odd positive d, got {d}")));
    }
    let (d0, _) = squarefree_decompose(d);
    let disc = if d0 == 1 { 1 } else { primitive_discriminant(d0) };
    Ok(dirichlet_l(disc, s)? * removed_factors(disc, &prime_divisors(d), s))
}

/// `F(x) = x^{−s/2} Γ(s/2, x) + x^{−(1−s)/2} Γ((1−s)/2, x)`, tabulated on a
/// uniform grid in `log x`, so that `Λ(s, χ) = Σ_{n≥1} χ(n) F(πn²/q)` for even
/// primitive real `χ` of conductor `q`.
struct ThetaKernel {
    u0: f64,
    h: f64,
    values: Vec<Complex>,
}

/// `F(x)` is below `e^{−45}` of its size at the origin scale past this point.
const KERNEL_X_MAX: f64 = 45.0;
const KERNEL_STEP: f64 = 1e-3;

impl ThetaKernel {
    fn new(s: Complex, x_min: f64) -> Result<Self> {
        let u0 = x_min.ln() - 4.0 * KERNEL_STEP;
        let u1 = KERNEL_X_MAX.ln() + 4.0 * KERNEL_STEP;
        let count = ((u1 - u0) / KERNEL_STEP).ceil() as usize + 1;
        let (a, b) = (s * 0.5, (c64(1.0, 0.0) - s) * 0.5);
        let values = (0..count)
            .into_par_iter()
            .map(|k| {
                let u = u0 + k as f64 * KERNEL_STEP;
                let x = u.exp();
                Ok((-a * u).exp() * upper_incomplete_gamma(a, x)? + (-b * u).exp() * upper_incomplete_gamma(b, x)?)
            })
            .collect::<Result<_>>()?;
        Ok(Self { u0, h: KERNEL_STEP, values })
    }

    /// Four-point Lagrange interpolation in `log x`.
    fn eval(&self, x: f64) -> Complex {
        let t = (x.ln() - self.u0) / self.h;
        let i = (t.floor() as usize).clamp(1, self.values.len() - 3);
        let f = t - i as f64;
        let (p0, p1, p2, p3) = (self.values[i - 1], self.values[i], self.values[i + 1], self.values[i + 2]);
        let w0 = -f * (f - 1.0) * (f - 2.0) / 6.0;
        let w1 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
        let w2 = -(f + 1.0) * f * (f - 2.0) / 2.0;
        let w3 = (f + 1.0) * f * (f - 1.0) / 6.0;
        p0 * w0 + p1 * w1 + p2 * w2 + p3 * w3
    }
}

/// The summands `c_d = L_{S∪S_d}(χ_d, s) a(1,s,d)` for odd `d ≤ N` at fixed `s`.
///
/// Built once per `(s, N)`; every `w` and `ρ` then costs one pass. Values of
/// `L(s, χ_{D*})` come from the theta-series approximate functional equation
/// with a tabulated kernel; `d` a square uses `ζ(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DDTable {
    s: Complex,
    n: u64,
    coefficients: Vec<Complex>,
}

fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn check_region(s: Complex, w: Complex, n: u64) -> Result<()> {
    if !(s.re >= MIN_CONVERGENT_RE) || !(w.re >= MIN_CONVERGENT_RE) || n < MIN_TRUNCATION {
        return Err(Error::NotInConvergenceRegion(format!(
            "need Re s, Re w >= {MIN_CONVERGENT_RE} and N >= {MIN_TRUNCATION}; got s = {s}, w = {w}, N = {n}"
        )));
    }
    Ok(())
}

impl DDTable {
    /// `Re s ≥ 1.1`, `N ≥ 1000`.
    pub fn new(s: Complex, n: u64) -> Result<Self> {
        check_region(s, c64(MIN_CONVERGENT_RE, 0.0), n)?;
        Self::build(s, n)
    }

    fn build(s: Complex, n: u64) -> Result<Self> {
        let q_max = 4 * n;
        let kernel = ThetaKernel::new(s, PI / q_max as f64)?;
        let n_terms_max = ((KERNEL_X_MAX * q_max as f64 / PI).sqrt().ceil() as usize).max(2);
        let spf = smallest_prime_factors(n_terms_max.max(n as usize));
        let zeta_s = zeta(s)?;
        let half = s * 0.5;
        let log_gamma_half = log_gamma(half)?;
        let coefficients = (0..n.div_ceil(2))
            .into_par_iter()
            .map(|k| {
                let d = 2 * k + 1;
                let mut primes = Vec::new();
                let mut m = d as usize;
                while m > 1 {
                    let p = spf[m] as usize;
                    primes.push(p as u64);
                    while m.is_multiple_of(p) {
                        m /= p;
                    }
                }
                let (d0, _) = squarefree_decompose(d);
                let (disc, l) = if d0 == 1 {
                    (1, zeta_s)
                } else {
                    let disc = primitive_discriminant(d0);
                    let q = disc as f64;
                    let terms = (KERNEL_X_MAX * q / PI).sqrt().floor() as usize;
                    let mut chi = vec![0i8; terms + 1];
                    chi[1] = 1;
                    let mut lambda = kernel.eval(PI / q);
                    for j in 2..=terms {
                        let p = spf[j] as usize;
                        chi[j] = if p == j { kronecker(disc, j as i64) as i8 } else { chi[p] * chi[j / p] };
                        if chi[j] != 0 {
                            lambda += kernel.eval(PI * (j * j) as f64 / q) * chi[j] as f64;
                        }
                    }
                    let gamma_factor = (log_gamma_half + half * (q / PI).ln()).exp();
                    (disc, lambda / gamma_factor)
                };
                Ok(l * removed_factors(disc, &primes, s) * weight_factor(s, d))
            })
            .collect::<Result<_>>()?;
        Ok(Self { s, n, coefficients })
    }

    pub fn s(&self) -> Complex {
        self.s
    }

    pub fn bound(&self) -> u64 {
        self.n
    }

    /// `c_d` for odd `d ≤ N`.
    pub fn coefficient(&self, d: u64) -> Option<Complex> {
        (d % 2 == 1 && d <= self.n).then(|| self.coefficients[(d / 2) as usize])
    }

    fn weighted_sum<F: Fn(u64) -> f64>(&self, w: Complex, weight: F) -> Complex {
        let mut sum = c64(0.0, 0.0);
        for (k, c) in self.coefficients.iter().enumerate() {
            let d = 2 * k as u64 + 1;
            let a = weight(d);
            if a != 0.0 {
                sum += c * (-w * (d as f64).ln()).exp() * a;
            }
        }
        sum
    }

    /// `Z_ρ(s, w)` truncated at `N`.
    pub fn z_rho(&self, w: Complex, k: usize) -> Result<DDValue> {
        check_region(self.s, w, self.n)?;
        if k >= RayClassSetup::CLASS_NUMBER {
            return Err(Error::InvalidArgument(format!("rho index {k} out of range 0..4")));
        }
        let value = self.weighted_sum(w, |d| rho(k, d) as f64);
        Ok(DDValue { value, tail: self.tail_bound(w) })
    }

    /// `Z⁰(s, w)` truncated at `N`.
    pub fn z_principal(&self, w: Complex) -> Result<DDValue> {
        check_region(self.s, w, self.n)?;
        let value = self.weighted_sum(w, |d| if d % 8 == 1 { 1.0 } else { 0.0 });
        Ok(DDValue { value, tail: self.tail_bound(w) })
    }

    fn tail_bound(&self, w: Complex) -> f64 {
        let c = self.coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
        2.0 * c * (self.n as f64).powf(1.0 - w.re) / (w.re - 1.0)
    }

    /// Fits the mean non-square summand per integer as `R + B x^α`,
    /// `α = 1/2 − s`, by weighted least squares over the dyadic windows
    /// `(N/2^{j+1}, N/2^j]`, `j < 5`.
    ///
    /// `R` is the density behind the pole at `w = 1`; `B x^α` is the
    /// secondary term behind the pole at `w = 3/2 − s`. Odd squares are left
    /// out, see [`DDTable::residue`].
    pub fn tail_model<F: Fn(u64) -> f64>(&self, weight: F) -> (Complex, Complex) {
        let alpha = c64(0.5, 0.0) - self.s;
        // normal equations for the basis (1, φ), φ = window average of x^α
        let (mut a11, mut a12, mut a22) = (0.0, c64(0.0, 0.0), 0.0);
        let (mut b1, mut b2) = (c64(0.0, 0.0), c64(0.0, 0.0));
        for j in 0..5 {
            let hi = self.n >> j;
            let lo = self.n >> (j + 1);
            let len = (hi - lo) as f64;
            let mut sum = c64(0.0, 0.0);
            for d in ((lo + 1) | 1..=hi).step_by(2) {
                if !is_square(d) {
                    sum += self.coefficients[(d / 2) as usize] * weight(d);
                }
            }
            let mean = sum / len;
            let (l, h) = ((lo as f64).ln(), (hi as f64).ln());
            let phi = if (alpha + 1.0).norm() < 1e-12 {
                c64((h - l) / len, 0.0)
            } else {
                (((alpha + 1.0) * h).exp() - ((alpha + 1.0) * l).exp()) / ((alpha + 1.0) * len)
            };
            a11 += len;
            a12 += phi * len;
            a22 += phi.norm_sqr() * len;
            b1 += mean * len;
            b2 += phi.conj() * mean * len;
        }
        // [a11 a12; conj(a12) a22] [R; B] = [b1; b2]
        let det = a11 * a22 - a12.norm_sqr();
        let r = (b1 * a22 - a12 * b2) / det;
        let b = (b2 * a11 - a12.conj() * b1) / det;
        (r, b)
    }

    /// Non-square part of the sum with the modelled tail `d > N`:
    /// `R N^{1−w}/(w−1) + B N^{1+α−w}/(w−1−α)`.
    fn non_square_sum<F: Fn(u64) -> f64>(&self, w: Complex, weight: F, model: (Complex, Complex)) -> Complex {
        let (r, b) = model;
        let alpha = c64(0.5, 0.0) - self.s;
        let ln = (self.n as f64).ln();
        let tail = r * ((1.0 - w) * ln).exp() / (w - 1.0) + b * ((alpha + 1.0 - w) * ln).exp() / (w - 1.0 - alpha);
        self.weighted_sum(w, |d| if is_square(d) { 0.0 } else { weight(d) }) + tail
    }
}

fn is_square(d: u64) -> bool {
    let r = (d as f64).sqrt().round() as u64;
    r * r == d
}

/// `Z_ρ(s, w)` with its tail bound.
pub fn z_rho(point: &DDPoint) -> Result<DDValue> {
    check_region(point.s, point.w, point.n)?;
    DDTable::build(point.s, point.n)?.z_rho(point.w, point.rho)
}

/// `Z⁰(s, w)`: the sum over `d ≡ 1 mod 8`.
pub fn z_principal(s: Complex, w: Complex, n: u64) -> Result<DDValue> {
    check_region(s, w, n)?;
    DDTable::build(s, n)?.z_principal(w)
}

fn extrapolate(samples: &[(f64, Complex)]) -> Result<Complex> {
    let levels = neville_at_zero(samples);
    let last = *levels.last().unwrap();
    if levels.len() >= 2 {
        let prev = levels[levels.len() - 2];
        let reference = samples.iter().map(|p| p.1.norm()).fold(last.norm(), f64::max);
        let change = (last - prev).norm() / reference;
        if !(change <= EXTRAPOLATION_TOL) {
            return Err(Error::ExtrapolationUnstable(100.0 * change));
        }
    }
    Ok(last)
}

fn check_residue_args(s: Complex, deltas: &[f64], n: u64) -> Result<()> {
    if !(s.re > 1.05 && s.re < 1.6) || n < MIN_TRUNCATION {
        return Err(Error::NotInConvergenceRegion(format!(
            "residue needs 1.05 < Re s < 1.6 and N >= {MIN_TRUNCATION}; got s = {s}, N = {n}"
        )));
    }
    if deltas.is_empty() || deltas.iter().any(|&d| !(d >= 0.1)) || deltas.windows(2).any(|p| p[1] >= p[0]) {
        return Err(Error::InvalidArgument("deltas must be decreasing and at least 0.1".into()));
    }
    Ok(())
}

impl DDTable {
    /// `lim_{w→1} (w−1) Z(s, w)` for `Z⁰` (`k = None`) or `Z_ρ`.
    ///
    /// Odd squares `d = k²` carry `ζ(s)`-sized coefficients of density
    /// `~ 1/√d`: their sum is regular at `w = 1` but has a pole at `w = 1/2`,
    /// close enough to spoil polynomial extrapolation, so they are dropped.
    /// The rest is sampled as `δ Z(s, 1+δ)` with the modelled tail, the fitted
    /// secondary pole `δ B/(δ − α)` (zero at `δ = 0`) is removed, and the
    /// samples are extrapolated to `δ = 0`.
    /// Fails with `ExtrapolationUnstable` when the last two Neville levels
    /// differ by more than 20% of the largest sample.
    pub fn residue(&self, deltas: &[f64], k: Option<usize>) -> Result<Complex> {
        check_residue_args(self.s, deltas, self.n)?;
        if k.is_some_and(|k| k >= RayClassSetup::CLASS_NUMBER) {
            return Err(Error::InvalidArgument(format!("rho index must be below {}", RayClassSetup::CLASS_NUMBER)));
        }
        let principal = |d: u64| if d % 8 == 1 { 1.0 } else { 0.0 };
        let twisted = |d: u64| rho(k.unwrap_or(0), d) as f64;
        let model = match k {
            None => self.tail_model(principal),
            Some(_) => self.tail_model(twisted),
        };
        let alpha = c64(0.5, 0.0) - self.s;
        let samples: Vec<(f64, Complex)> = deltas
            .iter()
            .map(|&delta| {
                let w = c64(1.0 + delta, 0.0);
                let v = match k {
                    None => self.non_square_sum(w, principal, model),
                    Some(_) => self.non_square_sum(w, twisted, model),
                };
                (delta, v * delta - model.1 * delta / (c64(delta, 0.0) - alpha))
            })
            .collect();
        extrapolate(&samples)
    }
}

/// `lim_{w→1} (w−1) Z⁰(s, w)` for `1.05 < Re s < 1.6`.
pub fn residue_at_w1(s: Complex, deltas: &[f64], n: u64) -> Result<Complex> {
    check_residue_args(s, deltas, n)?;
    DDTable::build(s, n)?.residue(deltas, None)
}

/// As [`residue_at_w1`] for `Z_ρ` (`k = Some(index)`) or `Z⁰` (`None`).
pub fn residue_at_w1_rho(s: Complex, deltas: &[f64], n: u64, k: Option<usize>) -> Result<Complex> {
    check_residue_args(s, deltas, n)?;
    DDTable::build(s, n)?.residue(deltas, k)
}

/// `(1 − 2^{−2s}) ζ(2s)`, the `s`-dependence of the residue.
pub fn residue_shape(s: Complex) -> Result<Complex> {
    Ok((c64(1.0, 0.0) - (-s * 2.0 * 2f64.ln()).exp()) * zeta(s * 2.0)?)
}

/// The first fundamental `D` (by `|D|`, positive before negative) with
/// `|Λ(s0, χ_D)|` above `1e−6` of its median on the radius-1/2 circle.
pub fn find_nonvanishing_twist(s0: Complex, search_bound: i64) -> Result<(i64, Complex)> {
    if !(s0.re >= 0.5 && s0.re < 1.0) {
        return Err(Error::InvalidArgument(format!("need 1/2 <= Re s0 < 1, got {s0}")));
    }
    if search_bound > MAX_TWIST_SEARCH {
        return Err(Error::InvalidArgument(format!("search bound {search_bound} exceeds {MAX_TWIST_SEARCH}")));
    }
    for d in fundamental_discriminants(search_bound) {
        let l = CompletedL::dirichlet(d)?;
        let value = completed(&l, s0)?;
        let scale = control_scale(&|s| completed(&l, s), s0, CONTROL_RADIUS)?;
        if value.norm() > TWIST_THRESHOLD * scale {
            return Ok((d, value));
        }
    }
    Err(Error::NoneFoundInBound(search_bound))
}

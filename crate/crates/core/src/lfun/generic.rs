//! Self-dual degree-2 L-functions ingested from coefficient files.
//!
//! File grammar:
//!
//! ```text
//! LFUN v1
//! degree=2 conductor=<q> epsilon=<+1|-1> normalization=<unitary|motivic> central=<0.5|1> gammashifts=<g1,g2>
//! p <a_p> <euler_degree_at_p>
//! ...
//! ```
//!
//! `#` starts a comment. The gamma factor is `Γ_R(s+g1) Γ_R(s+g2)` in the
//! file's own normalization. Only `g2 = g1 + 1` is supported: the product is
//! then `Γ_C(s+g1) = 2(2π)^{−s−g1} Γ(s+g1)`, whose inverse Mellin transform is
//! an exponential and gives the incomplete-gamma approximate functional
//! equation used here.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use crate::arithmetic::{factorize, kronecker};
use crate::special::{log_gamma, upper_incomplete_gamma};
use crate::{c64, Complex, Error, Result};

/// How the file states its coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Central point 1/2, `|a_p| ≤ 2`.
    Unitary,
    /// Central point 1 (weight 2), `|a_p| ≤ 2√p`.
    Motivic,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Unitary => "unitary",
            Normalization::Motivic => "motivic",
        }
    }
}

/// One prime line of a coefficient file, as written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimeEntry {
    pub p: u64,
    pub a_p: f64,
    pub euler_degree: u8,
}

/// Parsed contents of a coefficient file, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct LData {
    pub conductor: u64,
    pub epsilon: i32,
    pub normalization: Normalization,
    pub central: f64,
    pub gamma_shifts: [f64; 2],
    pub primes: Vec<PrimeEntry>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Parses the text of a coefficient file.
pub fn parse_lfunction(text: &str) -> Result<LData> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, magic) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    if magic != "LFUN v1" {
        return Err(parse_err(ln, format!("expected `LFUN v1`, found `{magic}`")));
    }

    let (ln, header) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing header line"))?;
    let mut degree = None;
    let mut conductor = None;
    let mut epsilon = None;
    let mut normalization = None;
    let mut central = None;
    let mut shifts = None;
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(ln, format!("header token `{token}` is not key=value")))?;
        let bad = || parse_err(ln, format!("bad value `{value}` for `{key}`"));
        let slot_taken = match key {
            "degree" => degree.replace(value.parse::<u32>().map_err(|_| bad())?).is_some(),
            "conductor" => conductor.replace(value.parse::<u64>().map_err(|_| bad())?).is_some(),
            "epsilon" => {
                let e = match value {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    _ => return Err(bad()),
                };
                epsilon.replace(e).is_some()
            }
            "normalization" => {
                let n = match value {
                    "unitary" => Normalization::Unitary,
                    "motivic" => Normalization::Motivic,
                    _ => return Err(bad()),
                };
                normalization.replace(n).is_some()
            }
            "central" => {
                let c = match value {
                    "0.5" => 0.5,
                    "1" | "1.0" => 1.0,
                    _ => return Err(bad()),
                };
                central.replace(c).is_some()
            }
            "gammashifts" => {
                let (a, b) = value.split_once(',').ok_or_else(bad)?;
                let g = [a.trim().parse::<f64>().map_err(|_| bad())?, b.trim().parse::<f64>().map_err(|_| bad())?];
                shifts.replace(g).is_some()
            }
            _ => return Err(parse_err(ln, format!("unknown header key `{key}`"))),
        };
        if slot_taken {
            return Err(parse_err(ln, format!("duplicate header key `{key}`")));
        }
    }
    let missing = |k: &str| parse_err(ln, format!("missing header key `{k}`"));
    let degree = degree.ok_or_else(|| missing("degree"))?;
    let conductor = conductor.ok_or_else(|| missing("conductor"))?;
    let epsilon = epsilon.ok_or_else(|| missing("epsilon"))?;
    let normalization = normalization.ok_or_else(|| missing("normalization"))?;
    let central = central.ok_or_else(|| missing("central"))?;
    let gamma_shifts = shifts.ok_or_else(|| missing("gammashifts"))?;
    if degree != 2 {
        return Err(parse_err(ln, format!("only degree 2 is supported, got {degree}")));
    }
    if conductor == 0 {
        return Err(parse_err(ln, "conductor must be positive"));
    }
    match (normalization, central) {
        (Normalization::Unitary, 0.5) => {}
        (Normalization::Motivic, 1.0) => {}
        _ => return Err(parse_err(ln, "normalization and central point disagree")),
    }
    if ((gamma_shifts[1] - gamma_shifts[0]) - 1.0).abs() > 1e-12 {
        return Err(parse_err(ln, "unsupported gamma shifts: need g2 = g1 + 1"));
    }

    let mut primes: Vec<PrimeEntry> = Vec::new();
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(ln, "expected `p a_p euler_degree`"));
        }
        let p: u64 = fields[0].parse().map_err(|_| parse_err(ln, format!("bad prime `{}`", fields[0])))?;
        let a_p: f64 = fields[1].parse().map_err(|_| parse_err(ln, format!("bad coefficient `{}`", fields[1])))?;
        let euler_degree: u8 = fields[2].parse().map_err(|_| parse_err(ln, format!("bad Euler degree `{}`", fields[2])))?;
        if !a_p.is_finite() {
            return Err(parse_err(ln, "coefficient is not finite"));
        }
        if euler_degree > 2 {
            return Err(parse_err(ln, format!("Euler degree {euler_degree} exceeds 2")));
        }
        if !is_prime(p) {
            return Err(parse_err(ln, format!("{p} is not prime")));
        }
        let expected = match primes.last() {
            None => 2,
            Some(prev) => (prev.p + 1..).find(|&n| is_prime(n)).unwrap_or(u64::MAX),
        };
        if p != expected {
            return Err(parse_err(ln, format!("primes must be consecutive and increasing: expected {expected}, got {p}")));
        }
        primes.push(PrimeEntry { p, a_p, euler_degree });
    }
    if primes.is_empty() {
        return Err(parse_err(text.lines().count().max(1), "empty coefficient list"));
    }
    Ok(LData { conductor, epsilon, normalization, central, gamma_shifts, primes })
}

/// Coefficient data in unitary normalization, ready for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericL {
    conductor: u64,
    root_number: f64,
    /// `μ` with gamma factor `Γ_C(s + μ)`.
    mu: f64,
    /// `a_n` for `0 ≤ n ≤ limit` (index 0 unused).
    coeffs: Vec<f64>,
    /// Twisting discriminant, `1` when untwisted.
    twist: i64,
    source: Normalization,
}

impl GenericL {
    pub fn from_data(data: &LData) -> Result<Self> {
        let shift = data.central - 0.5;
        let mu = data.gamma_shifts[0] + shift;
        let limit = data.primes.last().map(|e| e.p).unwrap_or(1) as usize;
        let mut prime_values = vec![(0.0f64, 0u8); limit + 1];
        for e in &data.primes {
            prime_values[e.p as usize] = (e.a_p / (e.p as f64).powf(shift), e.euler_degree);
        }
        let coeffs = multiplicative_extension(limit, &prime_values);
        Ok(Self { conductor: data.conductor, root_number: data.epsilon as f64, mu, coeffs, twist: 1, source: data.normalization })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn root_number(&self) -> f64 {
        self.root_number
    }

    /// `μ` in `Γ_C(s + μ)`; unitary shifts are `(μ, μ + 1)`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn source_normalization(&self) -> Normalization {
        self.source
    }

    /// Largest `n` with a known coefficient.
    pub fn coefficient_limit(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coefficient(&self, n: u64) -> Option<f64> {
        self.coeffs.get(n as usize).copied().filter(|_| n >= 1)
    }

    pub(crate) fn twisted(&self, d: i64) -> Result<Self> {
        let q = self.conductor;
        let g = gcd(d.unsigned_abs(), q);
        if g != 1 {
            return Err(Error::NotCoprime { d, conductor: q });
        }
        let dd = d.unsigned_abs();
        let conductor = dd
            .checked_mul(dd)
            .and_then(|d2| d2.checked_mul(q))
            .ok_or_else(|| Error::Overflow(format!("twisted conductor {q}·{d}²")))?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * kronecker(d, n as i64) as f64)
            .collect();
        let chi_minus_q = kronecker(d, -(q as i64)) as f64;
        Ok(Self {
            conductor,
            root_number: self.root_number * chi_minus_q,
            mu: self.mu,
            coeffs,
            twist: if self.twist == 1 { d } else { self.twist * d },
            source: self.source,
        })
    }

    /// `γ(s) = q^{s/2} Γ_C(s + μ)`.
    pub fn gamma_factor(&self, s: Complex) -> Result<Complex> {
        let z = s + self.mu;
        let log = s * (0.5 * (self.conductor as f64).ln()) + (2.0f64).ln() - z * (2.0 * PI).ln() + log_gamma(z)?;
        Ok(log.exp())
    }

    /// `Λ(s)` by the approximate functional equation with cut parameter `x`.
    ///
    /// `Λ(s) = 2(2π)^{−μ} Σ a_n [ (A/n)^s Γ(s+μ, n x/A) + ε (A/n)^{1−s} Γ(1−s+μ, n/(x A)) ]`, `A = √q/(2π)`.
    pub fn afe(&self, s: Complex, x: f64) -> Result<Complex> {
        let a = (self.conductor as f64).sqrt() / (2.0 * PI);
        let z1 = s + self.mu;
        let z2 = c64(1.0, 0.0) - s + self.mu;
        let y_cut = 42.0 + z1.norm().max(z2.norm());
        let n_max = (a * x.max(1.0 / x) * y_cut).ceil() as u64;
        if n_max > self.coefficient_limit() {
            return Err(Error::InsufficientCoefficients { needed: n_max, available: self.coefficient_limit() });
        }
        let ln_a = a.ln();
        let mut sum = c64(0.0, 0.0);
        for n in 1..=n_max {
            let an = self.coeffs[n as usize];
            if an == 0.0 {
                continue;
            }
            let ln_ratio = ln_a - (n as f64).ln();
            let nf = n as f64;
            let first = (s * ln_ratio).exp() * upper_incomplete_gamma(z1, nf * x / a)?;
            let second = ((c64(1.0, 0.0) - s) * ln_ratio).exp() * upper_incomplete_gamma(z2, nf / (x * a))?;
            sum += (first + second * self.root_number) * an;
        }
        Ok(sum * (2.0 * (2.0 * PI).powf(-self.mu)))
    }

    /// `Σ_{n ≤ terms} a_n n^{−s}`; meaningful for `Re s > 3/2`.
    pub fn dirichlet_series(&self, s: Complex, terms: u64) -> Result<Complex> {
        if terms > self.coefficient_limit() {
            return Err(Error::InsufficientCoefficients { needed: terms, available: self.coefficient_limit() });
        }
        let mut sum = c64(0.0, 0.0);
        for n in 1..=terms {
            let an = self.coeffs[n as usize];
            if an != 0.0 {
                sum += (-s * (n as f64).ln()).exp() * an;
            }
        }
        Ok(sum)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extends prime data to all `n ≤ limit`. Degree 2: Hecke recursion with trivial
/// central character; degree 1: completely multiplicative at `p`; degree 0: `a_{p^k} = 0`.
fn multiplicative_extension(limit: usize, prime_values: &[(f64, u8)]) -> Vec<f64> {
    let mut spf = vec![0usize; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    let mut a = vec![0.0; limit + 1];
    if limit >= 1 {
        a[1] = 1.0;
    }
    for n in 2..=limit {
        let p = spf[n];
        let mut m = n;
        let mut pk = 1;
        while m % p == 0 {
            m /= p;
            pk *= p;
        }
        if m > 1 {
            a[n] = a[pk] * a[m];
            continue;
        }
        // n = p^k
        let (ap, deg) = prime_values[p];
        a[n] = if n == p {
            if deg == 0 {
                0.0
            } else {
                ap
            }
        } else {
            let prev = a[n / p];
            match deg {
                2 => {
                    let prev2 = if n / p == p { 1.0 } else { a[n / p / p] };
                    ap * prev - prev2
                }
                1 => ap * prev,
                _ => 0.0,
            }
        };
    }
    a
}

/// Reads and validates a coefficient file into a [`GenericL`] handle.
pub fn read_lfunction(path: &Path) -> Result<Arc<GenericL>> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(0, format!("cannot read {}: {e}", path.display())))?;
    let data = parse_lfunction(&text)?;
    Ok(Arc::new(GenericL::from_data(&data)?))
}

//! Binary quadratic forms of fundamental discriminant, their classes under
//! `SL2(Z)`, and the closed geodesics / Heegner points they determine.

use super::symbols::is_fundamental;
use crate::{Complex, Error, Result, MAX_ABS_DISCRIMINANT};

/// An integral binary quadratic form `a x² + b xy + c y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// `2×2` integer matrix `[[α, β], [γ, δ]]` stored row-major.
pub type IntMatrix = [[i128; 2]; 2];

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn isqrt(n: i64) -> i64 {
    debug_assert!(n >= 0);
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn mat_mul(x: &IntMatrix, y: &IntMatrix) -> Option<IntMatrix> {
    let mut out = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let a = x[i][0].checked_mul(y[0][j])?;
            let b = x[i][1].checked_mul(y[1][j])?;
            out[i][j] = a.checked_add(b)?;
        }
    }
    Some(out)
}

impl BinaryForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    /// Reduction test: `|b| ≤ a ≤ c` with the boundary rules for `D < 0`,
    /// `√D − b < 2|a| < √D + b`, `0 < b < √D` for `D > 0`.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d < 0 {
            let (a, b, c) = (self.a, self.b, self.c);
            a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
        } else {
            let (a2, b) = (2 * self.a.abs(), self.b);
            b > 0 && b * b < d && (a2 + b) * (a2 + b) > d && (a2 <= b || (a2 - b) * (a2 - b) < d)
        }
    }

    /// One step of the reduction cycle for indefinite reduced forms:
    /// `Q ∘ [[0,−1],[1,s]]`, returned with its transformation matrix.
    fn rho(&self, d: i64) -> (BinaryForm, IntMatrix) {
        let r = isqrt(d);
        let m = 2 * self.c.abs();
        let b2 = r - (r + self.b).rem_euclid(m);
        let s = (b2 + self.b) / (2 * self.c);
        let c2 = (b2 * b2 - d) / (4 * self.c);
        (BinaryForm::new(self.c, b2, c2), [[0, -1], [1, s as i128]])
    }

    /// Evaluates `Q(x, 1)` at a complex point.
    pub fn eval(&self, z: Complex) -> Complex {
        z * z * self.a as f64 + z * self.b as f64 + self.c as f64
    }
}

/// Unit data attached to a discriminant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitData {
    /// Fundamental automorph solution of `t² − D u² = 4`, `ε_D = (t + u√D)/2`.
    Real { t: i128, u: i128 },
    /// Number of roots of unity in the imaginary quadratic order.
    Imaginary { w: u32 },
}

/// A fundamental discriminant with its reduced forms (one per `SL2(Z)`-class).
#[derive(Debug, Clone, PartialEq)]
pub struct Discriminant {
    pub d: i64,
    pub reduced_forms: Vec<BinaryForm>,
    pub unit: UnitData,
}

impl Discriminant {
    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// Number of `SL2(Z)`-classes of primitive forms (the narrow class number for `D > 0`).
    pub fn class_number(&self) -> usize {
        self.reduced_forms.len()
    }

    /// `ε_D` for `D > 0`.
    pub fn epsilon(&self) -> Option<f64> {
        match self.unit {
            UnitData::Real { t, u } => Some((t as f64 + u as f64 * (self.d as f64).sqrt()) / 2.0),
            UnitData::Imaginary { .. } => None,
        }
    }

    /// `log ε_D`, computed without forming `ε_D` when it is large.
    pub fn log_epsilon(&self) -> Option<f64> {
        match self.unit {
            UnitData::Real { t, .. } => {
                let t = t as f64;
                // ε = (t + √(t² − 4))/2 = exp(acosh(t/2))
                Some((t / 2.0).acosh())
            }
            UnitData::Imaginary { .. } => None,
        }
    }

    /// Hyperbolic length `2 log ε_D` of each closed geodesic.
    pub fn period_length(&self) -> Option<f64> {
        self.log_epsilon().map(|l| 2.0 * l)
    }

    pub fn unit_count(&self) -> Option<u32> {
        match self.unit {
            UnitData::Imaginary { w } => Some(w),
            UnitData::Real { .. } => None,
        }
    }

    pub fn geodesics(&self) -> Vec<GeodesicParam> {
        let length = self.period_length().unwrap_or(0.0);
        self.reduced_forms
            .iter()
            .map(|f| GeodesicParam::new(*f, length))
            .collect()
    }

    pub fn heegner_points(&self) -> Vec<HeegnerPoint> {
        self.reduced_forms.iter().map(|f| HeegnerPoint::new(*f)).collect()
    }
}

/// Enumerates the class data of a fundamental discriminant.
pub fn class_data(d: i64) -> Result<Discriminant> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    if d.abs() > MAX_ABS_DISCRIMINANT {
        return Err(Error::DiscriminantTooLarge(d));
    }
    if d < 0 {
        let forms = reduced_definite(d);
        let w = match d {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        Ok(Discriminant { d, reduced_forms: forms, unit: UnitData::Imaginary { w } })
    } else {
        let reps = indefinite_class_representatives(d);
        let principal = reps
            .iter()
            .copied()
            .find(|f| f.a == 1)
            .or_else(|| reps.first().copied())
            .expect("at least one class");
        let (t, u) = fundamental_automorph(principal, d)?;
        Ok(Discriminant { d, reduced_forms: reps, unit: UnitData::Real { t, u } })
    }
}

fn reduced_definite(d: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let amax = isqrt(-d / 3);
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryForm::new(a, b, num / (4 * a));
            if f.c >= a && f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

fn reduced_indefinite(d: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let r = isqrt(d);
    for b in 1..=r {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let prod = (b * b - d) / 4; // a*c < 0
        let m = prod.abs();
        let mut a = 1;
        while a <= m {
            if m % a == 0 {
                for sa in [a, -a] {
                    let f = BinaryForm::new(sa, b, prod / sa);
                    if f.is_reduced() && f.is_primitive() {
                        out.push(f);
                    }
                }
            }
            a += 1;
        }
    }
    out
}

/// The reduction cycle of an indefinite reduced form.
pub fn reduction_cycle(form: BinaryForm) -> Vec<(BinaryForm, IntMatrix)> {
    let d = form.discriminant();
    let mut cycle = Vec::new();
    let mut cur = form;
    loop {
        let (next, m) = cur.rho(d);
        cycle.push((cur, m));
        cur = next;
        if cur == form {
            break;
        }
    }
    cycle
}

/// One representative per cycle: the smallest form with `a > 0`.
fn indefinite_class_representatives(d: i64) -> Vec<BinaryForm> {
    let mut all = reduced_indefinite(d);
    all.sort();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for f in all {
        if seen.contains(&f) {
            continue;
        }
        let cycle = reduction_cycle(f);
        for (g, _) in &cycle {
            seen.insert(*g);
        }
        let rep = cycle
            .iter()
            .map(|(g, _)| *g)
            .filter(|g| g.a > 0)
            .min()
            .expect("indefinite cycles alternate the sign of a");
        reps.push(rep);
    }
    reps.sort();
    reps
}

/// Generator of the proper automorphs of `form`, via the product of the
/// cycle's transformation matrices (the continued fraction of its first root).
fn fundamental_automorph(form: BinaryForm, d: i64) -> Result<(i128, i128)> {
    let mut acc: IntMatrix = [[1, 0], [0, 1]];
    for (_, m) in reduction_cycle(form) {
        acc = mat_mul(&acc, &m).ok_or_else(|| Error::Overflow(format!("fundamental unit of D = {d}")))?;
    }
    let mut t = acc[0][0] + acc[1][1];
    let mut u = acc[1][0] / form.a as i128;
    if t < 0 {
        t = -t;
        u = -u;
    }
    let u = u.abs();
    let lhs = t
        .checked_mul(t)
        .and_then(|tt| u.checked_mul(u).and_then(|uu| uu.checked_mul(d as i128)).map(|duu| tt - duu));
    match lhs {
        Some(4) => Ok((t, u)),
        Some(v) => Err(Error::InvalidArgument(format!("automorph check failed for D = {d}: t²−Du² = {v}"))),
        None => Err(Error::Overflow(format!("fundamental unit of D = {d}"))),
    }
}

/// The automorph `[[(t−bu)/2, −cu], [au, (t+bu)/2]]` of a form.
pub fn automorph_matrix(form: BinaryForm, t: i128, u: i128) -> IntMatrix {
    let (a, b, c) = (form.a as i128, form.b as i128, form.c as i128);
    [[(t - b * u) / 2, -c * u], [a * u, (t + b * u) / 2]]
}

/// Möbius action of an integer matrix on the upper half-plane.
pub fn mobius(m: &IntMatrix, z: Complex) -> Complex {
    let f = |x: i128| x as f64;
    (z * f(m[0][0]) + f(m[0][1])) / (z * f(m[1][0]) + f(m[1][1]))
}

/// Closed geodesic of an indefinite form, parametrized by hyperbolic arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicParam {
    pub form: BinaryForm,
    pub w1: f64,
    pub w2: f64,
    pub period_length: f64,
}

impl GeodesicParam {
    pub fn new(form: BinaryForm, period_length: f64) -> Self {
        let sd = (form.discriminant() as f64).sqrt();
        let r1 = (-(form.b as f64) - sd) / (2.0 * form.a as f64);
        let r2 = (-(form.b as f64) + sd) / (2.0 * form.a as f64);
        Self { form, w1: r1.min(r2), w2: r1.max(r2), period_length }
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.w1 + self.w2)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.w2 - self.w1)
    }

    /// `z(t)` on the semicircle from `w1` (t → −∞) to `w2` (t → +∞), unit speed.
    pub fn point(&self, t: f64) -> Complex {
        let r = self.radius();
        Complex::new(self.center() + r * t.tanh(), r / t.cosh())
    }

    /// `z'(t)`, used for speed checks.
    pub fn velocity(&self, t: f64) -> Complex {
        let r = self.radius();
        let sech = 1.0 / t.cosh();
        Complex::new(r * sech * sech, -r * sech * t.tanh())
    }

    /// The automorph that translates the geodesic forward by `period_length`.
    pub fn forward_automorph(&self, t: i128, u: i128) -> IntMatrix {
        let m = automorph_matrix(self.form, t, u);
        // w2 attracting  ⇔  |γ w2 + δ| > 1
        let scale = (m[1][0] as f64) * self.w2 + m[1][1] as f64;
        if scale.abs() > 1.0 {
            m
        } else {
            [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
        }
    }
}

/// Geodesic point `z(t)` of a parametrized geodesic.
pub fn geodesic_point(g: &GeodesicParam, t: f64) -> Complex {
    g.point(t)
}

/// Root in the upper half-plane of a positive definite form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeegnerPoint {
    pub form: BinaryForm,
    pub z: Complex,
}

impl HeegnerPoint {
    pub fn new(form: BinaryForm) -> Self {
        let d = form.discriminant();
        let z = Complex::new(-(form.b as f64), ((-d) as f64).sqrt()) / (2.0 * form.a as f64);
        Self { form, z }
    }
}

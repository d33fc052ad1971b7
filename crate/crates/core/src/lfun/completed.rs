use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use super::dirichlet::{check_envelope, dirichlet_l_char, zeta, zeta_unbounded};
use super::generic::{read_lfunction, GenericL};
use crate::arithmetic::{Parity, QuadChar};
use crate::special::log_gamma;
use crate::{c64, Complex, Error, Result};

/// Which L-function a [`CompletedL`] evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum LKind {
    Zeta,
    Dirichlet(QuadChar),
    Generic(Arc<GenericL>),
}

/// A self-dual completed L-function `Λ(s) = ε Λ(1−s)` in unitary normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletedL {
    kind: LKind,
    conductor: u64,
    gamma_shifts: Vec<f64>,
    root_number: Complex,
}

impl CompletedL {
    /// `Λ_ζ(s) = π^{−s/2} Γ(s/2) ζ(s)`.
    pub fn zeta() -> Self {
        Self { kind: LKind::Zeta, conductor: 1, gamma_shifts: vec![0.0], root_number: c64(1.0, 0.0) }
    }

    /// `Λ(s, χ_D) = (|D|/π)^{(s+a)/2} Γ((s+a)/2) L(s, χ_D)`; `D = 1` gives `Λ_ζ`.
    pub fn dirichlet(d: i64) -> Result<Self> {
        if d == 1 {
            return Ok(Self::zeta());
        }
        let chi = QuadChar::new(d)?;
        Ok(Self {
            kind: LKind::Dirichlet(chi),
            conductor: chi.conductor(),
            gamma_shifts: vec![chi.parity().shift() as f64],
            root_number: c64(1.0, 0.0),
        })
    }

    pub fn generic(data: Arc<GenericL>) -> Self {
        let mu = data.mu();
        Self {
            conductor: data.conductor(),
            gamma_shifts: vec![mu, mu + 1.0],
            root_number: c64(data.root_number(), 0.0),
            kind: LKind::Generic(data),
        }
    }

    pub fn kind(&self) -> &LKind {
        &self.kind
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Shifts `μ_j` of the factors `Γ_R(s + μ_j)`.
    pub fn gamma_shifts(&self) -> &[f64] {
        &self.gamma_shifts
    }

    pub fn root_number(&self) -> Complex {
        self.root_number
    }

    pub fn degree(&self) -> usize {
        self.gamma_shifts.len()
    }

    /// Parity `a` for degree-1 functions.
    pub fn parity(&self) -> Option<Parity> {
        match &self.kind {
            LKind::Zeta => Some(Parity::Even),
            LKind::Dirichlet(chi) => Some(chi.parity()),
            LKind::Generic(_) => None,
        }
    }

    pub fn generic_data(&self) -> Option<&GenericL> {
        match &self.kind {
            LKind::Generic(g) => Some(g),
            _ => None,
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            LKind::Zeta => "zeta".to_string(),
            LKind::Dirichlet(chi) => format!("chi_{}", chi.discriminant()),
            LKind::Generic(g) if g.twist() != 1 => format!("generic(q={}, twist {})", self.conductor, g.twist()),
            LKind::Generic(_) => format!("generic(q={})", self.conductor),
        }
    }

    /// `Λ(s)`.
    pub fn eval(&self, s: Complex) -> Result<Complex> {
        completed(self, s)
    }

    /// The uncompleted `L(s)`.
    pub fn l_value(&self, s: Complex) -> Result<Complex> {
        match &self.kind {
            LKind::Zeta => zeta(s),
            LKind::Dirichlet(chi) => dirichlet_l_char(chi, s),
            LKind::Generic(g) => Ok(g.afe(s, 1.0)? / g.gamma_factor(s)?),
        }
    }
}

/// `Λ(s)` for `ζ`, `χ_D`, or ingested data. Degree-1 values left of `Re s = 0`
/// (and at the gamma pole `s = −a`) come from `Λ(1−s)`.
pub fn completed(l: &CompletedL, s: Complex) -> Result<Complex> {
    check_envelope(s)?;
    match &l.kind {
        LKind::Zeta => xi(s),
        LKind::Dirichlet(chi) => {
            let a = chi.parity().shift() as f64;
            if s.re < 0.0 || (s + a).norm() < 1e-9 {
                return completed(l, c64(1.0, 0.0) - s);
            }
            let z = (s + a) * 0.5;
            let q = chi.conductor() as f64;
            Ok((log_gamma(z)? + z * (q / PI).ln()).exp() * dirichlet_l_char(chi, s)?)
        }
        LKind::Generic(g) => g.afe(s, 1.0),
    }
}

/// `Λ_ζ(s)` without the envelope check, for callers with their own bound.
pub(crate) fn xi(s: Complex) -> Result<Complex> {
    if s.norm() < 1e-12 || (s - 1.0).norm() < 1e-12 {
        return Err(Error::PoleAtZeroOrOne(s.re.round()));
    }
    if s.re < 0.0 {
        return xi(c64(1.0, 0.0) - s);
    }
    let half = s * 0.5;
    Ok((log_gamma(half)? - half * PI.ln()).exp() * zeta_unbounded(s)?)
}

/// Parses a coefficient file and checks its functional equation.
pub fn load_lfunction(path: impl AsRef<Path>) -> Result<CompletedL> {
    let l = CompletedL::generic(read_lfunction(path.as_ref())?);
    functional_equation_check(&l)?;
    Ok(l)
}

/// Points where ingested data is tested.
pub const FE_CHECK_POINTS: [(f64, f64); 3] = [(0.75, 1.0), (0.6, 2.5), (1.2, 0.4)];

/// Tolerance of the ingestion check.
pub const FE_CHECK_TOL: f64 = 1e-4;

/// Functional-equation check for ingested data.
///
/// The approximate functional equation at cut parameter `X` is a valid
/// representation of `Λ(s)` for every `X` only if `ε`, the conductor, the
/// gamma shifts and the coefficient normalization are mutually consistent.
/// At `X = 1` it is symmetric under `s ↔ 1−s` by construction, so the check
/// compares `X = 1` with `X = 1.3` (equivalently, `Λ(s)` with `ε Λ(1−s)`
/// evaluated at the reciprocal cut). Returns the largest relative residual.
pub fn functional_equation_check(l: &CompletedL) -> Result<f64> {
    let Some(g) = l.generic_data() else {
        return Ok(0.0);
    };
    let mut worst = 0.0f64;
    for (re, im) in FE_CHECK_POINTS {
        let s = c64(re, im);
        let balanced = g.afe(s, 1.0)?;
        let shifted = g.afe(s, 1.3)?;
        let residual = (balanced - shifted).norm() / (0.5 * (balanced.norm() + shifted.norm())).max(1e-300);
        if !(residual <= FE_CHECK_TOL) {
            return Err(Error::FunctionalEquationViolation { residual, re, im });
        }
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// `L ⊗ χ_D`. Twisting `ζ` gives `Λ(s, χ_D)`.
pub fn quadratic_twist(l: &CompletedL, d: i64) -> Result<CompletedL> {
    if d == 1 {
        return Ok(l.clone());
    }
    let chi = QuadChar::new(d)?;
    match &l.kind {
        LKind::Zeta => CompletedL::dirichlet(chi.discriminant()),
        LKind::Dirichlet(_) => Err(Error::InvalidArgument("twisting a Dirichlet L-function is not supported".into())),
        LKind::Generic(g) => Ok(CompletedL::generic(Arc::new(g.twisted(d)?))),
    }
}

/// The principal-series parameter `χ = ω·‖·‖^{s0−1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterPoint {
    pub omega: QuadChar,
    pub s0: Complex,
}

impl CharacterPoint {
    pub fn new(omega: QuadChar, s0: Complex) -> Self {
        Self { omega, s0 }
    }

    /// `Re(s0) − 1/2`.
    pub fn real_part(&self) -> f64 {
        self.s0.re - 0.5
    }

    pub fn l_function(&self) -> Result<CompletedL> {
        CompletedL::dirichlet(self.omega.discriminant())
    }
}

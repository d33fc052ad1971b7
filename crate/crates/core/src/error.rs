use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("discriminant {0} exceeds the configured bound |D| <= 10^6")]
    DiscriminantTooLarge(i64),

    #[error("pole of Gamma at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),

    #[error("pole of zeta at s = 1")]
    PoleAtOne,

    #[error("completed zeta has a pole at s = {0}")]
    PoleAtZeroOrOne(f64),

    #[error("Eisenstein series has a pole at s = {re}{im:+}i")]
    PoleAtSpecialPoint { re: f64, im: f64 },

    #[error("argument outside the accuracy envelope: {0}")]
    EnvelopeExceeded(String),

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("Cauchy derivative of order {order} unstable: r vs r/2 differ by {diff:e}")]
    DerivativeUnstable { order: usize, diff: f64 },

    #[error("rotated L-function is not real on the critical line (relative imaginary part {0:e})")]
    PhaseNotConstant(f64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("functional equation violated: residual {residual:e} at s = {re}{im:+}i")]
    FunctionalEquationViolation { residual: f64, re: f64, im: f64 },

    #[error("not enough coefficients: need n up to {needed}, data covers {available}")]
    InsufficientCoefficients { needed: u64, available: u64 },

    #[error("twist discriminant {d} is not coprime to conductor {conductor}")]
    NotCoprime { d: i64, conductor: u64 },

    #[error("calibration grid point s = {re}{im:+}i is too close to a zero or pole (|L-product| = {value:e})")]
    GridTooCloseToZero { re: f64, im: f64, value: f64 },

    #[error("point outside the convergence region: {0}")]
    NotInConvergenceRegion(String),

    #[error("Richardson extrapolation unstable: successive levels differ by {0:.1}%")]
    ExtrapolationUnstable(f64),

    #[error("no non-vanishing twist with |D| <= {0}")]
    NoneFoundInBound(i64),

    #[error("vanishing order undecidable: normalized derivative {order} has size {value:e}")]
    OrderUndecidable { order: usize, value: f64 },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse classification used for exit codes and machine-readable reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    PoleOrEnvelope,
    ConvergenceRegion,
    Numerical,
}

impl ErrorKind {
    /// Process exit code: 2 config, 3 pole or envelope, 4 convergence region, 5 numerical.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::PoleOrEnvelope => 3,
            ErrorKind::ConvergenceRegion => 4,
            ErrorKind::Numerical => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Config => "config",
            ErrorKind::PoleOrEnvelope => "pole_or_envelope",
            ErrorKind::ConvergenceRegion => "convergence_region",
            ErrorKind::Numerical => "numerical",
        }
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NotFundamental(_) | DiscriminantTooLarge(_) | Parse { .. } | NotCoprime { .. }
            | InvalidArgument(_) | FunctionalEquationViolation { .. } | InsufficientCoefficients { .. } => {
                ErrorKind::Config
            }
            PoleAtNonpositiveInteger(_) | PoleAtOne | PoleAtZeroOrOne(_) | PoleAtSpecialPoint { .. }
            | EnvelopeExceeded(_) | GridTooCloseToZero { .. } => ErrorKind::PoleOrEnvelope,
            NotInConvergenceRegion(_) => ErrorKind::ConvergenceRegion,
            NonConvergence(_) | DerivativeUnstable { .. } | PhaseNotConstant(_) | ExtrapolationUnstable(_)
            | NoneFoundInBound(_) | OrderUndecidable { .. } | Overflow(_) => ErrorKind::Numerical,
        }
    }

    /// Stable identifier for the variant.
    pub fn name(&self) -> &'static str {
        use Error::*;
        match self {
            NotFundamental(_) => "NotFundamental",
            DiscriminantTooLarge(_) => "DiscriminantTooLarge",
            PoleAtNonpositiveInteger(_) => "PoleAtNonpositiveInteger",
            PoleAtOne => "PoleAtOne",
            PoleAtZeroOrOne(_) => "PoleAtZeroOrOne",
            PoleAtSpecialPoint { .. } => "PoleAtSpecialPoint",
            EnvelopeExceeded(_) => "EnvelopeExceeded",
            NonConvergence(_) => "NonConvergence",
            DerivativeUnstable { .. } => "DerivativeUnstable",
            PhaseNotConstant(_) => "PhaseNotConstant",
            Parse { .. } => "ParseError",
            FunctionalEquationViolation { .. } => "FunctionalEquationViolation",
            InsufficientCoefficients { .. } => "InsufficientCoefficients",
            NotCoprime { .. } => "NotCoprime",
            GridTooCloseToZero { .. } => "GridTooCloseToZero",
            NotInConvergenceRegion(_) => "NotInConvergenceRegion",
            ExtrapolationUnstable(_) => "ExtrapolationUnstable",
            NoneFoundInBound(_) => "NoneFoundInBound",
            OrderUndecidable { .. } => "OrderUndecidable",
            Overflow(_) => "Overflow",
            InvalidArgument(_) => "InvalidArgument",
        }
    }
}

use thiserror::Error;

/// Broad failure classes, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Math,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element where a nonzero element is required")]
    ZeroElement,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(
        "zero at the origin is not isolated: no power of {variable} lies in the leading ideal"
    )]
    NotIsolatedZero { variable: String },
    #[error("all input polynomials vanish identically")]
    ZeroIdealInput,
    #[error("normal form exceeded the step limit of {0} reductions")]
    StepLimitExceeded(usize),
    #[error("determinacy search exceeded its cap of {0}")]
    CapExceeded(usize),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("symmetric form is degenerate")]
    DegenerateForm,
    #[error("operation is not supported in characteristic 2")]
    Char2Unsupported,
    #[error("ranks {0} and {1} differ by an odd number")]
    RankParityMismatch(usize, usize),
    #[error("map is not etale at the point (Jacobian vanishes)")]
    NotEtale,
    #[error("image of the point is not rational")]
    NonRationalImage,
    #[error("point is not rational: {0}")]
    NonRationalPoint(String),
    #[error("critical point is degenerate (Hessian determinant vanishes)")]
    DegenerateCriticalPoint,
    #[error("point is not a critical point of the equation")]
    NotCriticalPoint,
    #[error("point does not lie in the requested fiber")]
    NotInFiber,
    #[error("fiber cannot be resolved exactly: {0}")]
    UnresolvedFiber(String),
    #[error("modulus is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility of a degree {0} modulus over QQ cannot be verified; pass an explicit promise")]
    IrreducibilityUnverified(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::StepLimitExceeded(_)
            | Error::CapExceeded(_)
            | Error::InternalContradiction(_) => ErrorClass::Internal,
            _ => ErrorClass::Math,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroElement => "ZeroElement",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPrime(_) => "NotPrime",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::Parse(_) => "ParseError",
            Error::NotIsolatedZero { .. } => "NotIsolatedZero",
            Error::ZeroIdealInput => "ZeroIdealInput",
            Error::StepLimitExceeded(_) => "StepLimitExceeded",
            Error::CapExceeded(_) => "CapExceeded",
            Error::InternalContradiction(_) => "InternalContradiction",
            Error::DegenerateForm => "DegenerateForm",
            Error::Char2Unsupported => "Char2Unsupported",
            Error::RankParityMismatch(..) => "RankParityMismatch",
            Error::NotEtale => "NotEtale",
            Error::NonRationalImage => "NonRationalImage",
            Error::NonRationalPoint(_) => "NonRationalPoint",
            Error::DegenerateCriticalPoint => "DegenerateCriticalPoint",
            Error::NotCriticalPoint => "NotCriticalPoint",
            Error::NotInFiber => "NotInFiber",
            Error::UnresolvedFiber(_) => "UnresolvedFiber",
            Error::Reducible(_) => "Reducible",
            Error::IrreducibilityUnverified(_) => "IrreducibilityUnverified",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

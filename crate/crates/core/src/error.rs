use thiserror::Error;

/// Every failure the library can signal.
///
/// Variants map one-to-one onto the typed signals documented on each
/// operation, so callers can branch on them (the pipelines, for instance,
/// skip to the next multiple on [`Error::ExceptionalPoint`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value is not a perfect square")]
    NotASquare,
    #[error("negative input to an exact square root")]
    NegativeInput,
    #[error("equation check failed: {0}")]
    EquationFails(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("curve discriminant vanishes")]
    SingularCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("birational map undefined at this point (vanishing denominator)")]
    ExceptionalPoint,
    #[error("parameters have opposite parity: {0}")]
    ParityMismatch(String),
    #[error("parametric family degenerates at these parameters")]
    DegenerateFamily,
    #[error("no non-trivial direction kills the t and t^2 coefficients")]
    NoNontrivialDirection,
    #[error("the degenerate conic splits over a quadratic extension only")]
    IrrationalLines,
    #[error("descent step reproduced the seed or gave t = 0")]
    DegenerateStep,
    #[error("leading t^4 coefficient vanishes on the chosen direction")]
    ZeroQuartic,
    #[error("coordinate bound {0} too large for the 128-bit search table")]
    BoundTooLarge(u64),
    #[error("checkpoint i/o: {0}")]
    Io(String),
}

impl Error {
    /// Variant name, used by the CLI when reporting domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotASquare => "NotASquare",
            Error::NegativeInput => "NegativeInput",
            Error::EquationFails(_) => "EquationFails",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::SingularCurve => "SingularCurve",
            Error::NotOnCurve => "NotOnCurve",
            Error::ExceptionalPoint => "ExceptionalPoint",
            Error::ParityMismatch(_) => "ParityMismatch",
            Error::DegenerateFamily => "DegenerateFamily",
            Error::NoNontrivialDirection => "NoNontrivialDirection",
            Error::IrrationalLines => "IrrationalLines",
            Error::DegenerateStep => "DegenerateStep",
            Error::ZeroQuartic => "ZeroQuartic",
            Error::BoundTooLarge(_) => "BoundTooLarge",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error in polynomial: {0}")]
    PolySyntax(String),
    #[error("the zero polynomial does not define an algebraic number")]
    ZeroPolynomial,
    #[error("a degree-0 polynomial does not define an algebraic number")]
    DegreeZero,
    #[error("power exponent must be >= 1")]
    ZeroExponent,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial failed the irreducibility screen: {0}")]
    ScreenFailed(String),
    #[error("no real root greater than 1")]
    NoRootGreaterThanOne,
    #[error("precision escalation cap exceeded while {0}")]
    EscalationCap(String),
    #[error("moduli of conjugates {0} and {1} could not be separated or identified")]
    Undecided(usize, usize),
    #[error("max-modulus root count {modulus_count} disagrees with exponent-support period {support_m}")]
    BoydMismatch { modulus_count: usize, support_m: usize },
    #[error("probe quantity enclosure contains zero at the escalation cap (exponent outside the improvable set, or misclassification)")]
    ZeroNotExcluded,
    #[error("operation requires a Pisot number")]
    NotPisot,
    #[error("conjugate index {0} is the distinguished root itself")]
    ConjugateIsAlpha(usize),
    #[error("conjugate index {0} out of range for degree {1}")]
    ConjugateOutOfRange(usize, usize),
    #[error("need at least {need} usable data points, got {got}")]
    InsufficientData { need: usize, got: usize },
    #[error("zero values cannot enter a logarithmic decay fit")]
    ZeroInDecayFit,
    #[error("empty exponent range after exclusions")]
    EmptyRange,
    #[error("C(alpha) = 1: the margin statistic is degenerate for an integer")]
    DegenerateConstant,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

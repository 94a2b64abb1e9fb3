use thiserror::Error;

/// Errors raised by the library. Every variant carries a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("weights are not reduced (gcd {0} > 1)")]
    NotReduced(u64),
    #[error("weights are not well-formed")]
    IllFormedWeights,
    #[error("weight tuples differ")]
    WeightMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("all coordinates are zero")]
    AllZero,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not weighted homogeneous")]
    NotHomogeneous,
    #[error("term exponent {exponent} is not divisible by {divisor}")]
    NonIntegralExponent { exponent: u32, divisor: u64 },
    #[error("point lies on the common zero set of the generators")]
    PointOnSubscheme,
    #[error("point lies on the support of the divisor")]
    OnSupport,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("prime {0} does not divide the lcm of the weights")]
    PrimeNotDividingM(u64),
    #[error("generators are degenerate: {0}")]
    DegenerateGenerators(String),
    #[error("scan domain is empty")]
    EmptyDomain,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::ZeroInput => "zero_input",
            Error::NotPrime(_) => "not_prime",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::NotReduced(_) => "not_reduced",
            Error::IllFormedWeights => "ill_formed_weights",
            Error::WeightMismatch => "weight_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::AllZero => "all_zero",
            Error::ZeroScalar => "zero_scalar",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotHomogeneous => "not_homogeneous",
            Error::NonIntegralExponent { .. } => "non_integral_exponent",
            Error::PointOnSubscheme => "point_on_subscheme",
            Error::OnSupport => "on_support",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::PrimeNotDividingM(_) => "prime_not_dividing_m",
            Error::DegenerateGenerators(_) => "degenerate_generators",
            Error::EmptyDomain => "empty_domain",
            Error::InvalidConfig(_) => "invalid_config",
        }
    }

    /// True for errors caused by malformed text input rather than by the
    /// mathematics of well-formed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidWeights(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

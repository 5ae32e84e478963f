use thiserror::Error;

/// Every failure the library can report.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum EcError {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("basis index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("derivative order {j} outside the closed-form range 0..={max}")]
    OutOfTheoremRange { j: usize, max: usize },

    #[error("zero pivot at step {0}; matrix is singular or needs a permutation")]
    ZeroPivot(usize),

    #[error("interval length at or beyond the critical length: {0}")]
    BeyondCriticalLength(String),

    #[error("degenerate space: {0}")]
    DegenerateSpace(String),

    #[error("degenerate B-basis: {0}")]
    DegenerateBBasis(String),

    #[error("singular collocation matrix; choose different nodes")]
    SingularCollocation,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid rational input: {0}")]
    InvalidRational(String),

    #[error("zero weight at control point {0}; projection is singular")]
    ProjectionSingular(usize),

    #[error("target space is not nested: {0}")]
    NotNested(String),

    #[error("no nonnegative weights found up to order {max_order}")]
    ElevationExhausted { max_order: usize },

    #[error("weight {index} is negative ({value}); elevate the order")]
    NegativeWeights { index: usize, value: f64 },

    #[error("rational denominator {value} is not positive at u = {u}")]
    NonPositiveDenominator { u: f64, value: f64 },

    #[error("invalid input: {0}")]
    Input(String),
}

impl EcError {
    /// Stable identifier used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            EcError::InvalidSpace(_) => "invalid_space",
            EcError::IndexOutOfRange { .. } => "index_out_of_range",
            EcError::OutOfTheoremRange { .. } => "out_of_theorem_range",
            EcError::ZeroPivot(_) => "zero_pivot",
            EcError::BeyondCriticalLength(_) => "beyond_critical_length",
            EcError::DegenerateSpace(_) => "degenerate_space",
            EcError::DegenerateBBasis(_) => "degenerate_bbasis",
            EcError::SingularCollocation => "singular_collocation",
            EcError::DimensionMismatch(_) => "dimension_mismatch",
            EcError::InvalidRational(_) => "invalid_rational",
            EcError::ProjectionSingular(_) => "projection_singular",
            EcError::NotNested(_) => "not_nested",
            EcError::ElevationExhausted { .. } => "elevation_exhausted",
            EcError::NegativeWeights { .. } => "negative_weights",
            EcError::NonPositiveDenominator { .. } => "non_positive_denominator",
            EcError::Input(_) => "input",
        }
    }
}

pub type Result<T> = std::result::Result<T, EcError>;

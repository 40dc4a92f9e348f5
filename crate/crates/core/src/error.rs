use rug::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular curve: 4a^3 + 27b^2 = 0 (discriminant {discriminant})")]
    SingularCurve { discriminant: Rational },

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("projective point has all coordinates zero")]
    ZeroVector,

    #[error("rounding directions {0} and {1} cannot be combined soundly")]
    DirectionMismatch(&'static str, &'static str),

    #[error("comparison is indeterminate at the current precision; raise precision: {0}")]
    Indeterminate(String),

    #[error("Chow classes live on different ambients: {0:?} vs {1:?}")]
    AmbientMismatch(Vec<usize>, Vec<usize>),

    #[error("fiber over branch point `{label}` sums to {sum}, expected covering degree {degree}")]
    FiberMismatch { label: String, sum: u64, degree: u64 },

    #[error("inconsistent ramification profile: {0}")]
    InvalidGenus(String),

    #[error("matrix does not have full row rank {0}")]
    RankDeficient(usize),

    #[error("enumeration refused: predicted {predicted} candidates exceeds ceiling {ceiling}")]
    ResourceGuard { predicted: u128, ceiling: u128 },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

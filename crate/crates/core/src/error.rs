use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },

    #[error("line {line}: value {value} exceeds the magnitude bound {bound}")]
    MagnitudeExceeded { line: usize, value: i64, bound: i64 },

    #[error("sequence length {len} exceeds the length bound {bound}")]
    LengthExceeded { len: usize, bound: usize },

    #[error("empty sequence")]
    EmptySequence,

    #[error("pattern of length {m} is longer than text of length {n}")]
    PatternLongerThanText { m: usize, n: usize },

    #[error("wildcards are not allowed here (position {position})")]
    WildcardNotAllowed { position: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "correlation exactness bound exceeded (m = {m}, max |text| = {text_max}, max |pattern| = {pattern_max}); \
         use the arbitrary-precision correlation path"
    )]
    ExactnessBound {
        m: usize,
        text_max: u128,
        pattern_max: u128,
    },
}

impl Error {
    /// True for failures of the exact arithmetic engine rather than of the input.
    pub fn is_exactness_failure(&self) -> bool {
        matches!(self, Error::ExactnessBound { .. })
    }
}

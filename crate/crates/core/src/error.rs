use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("convolution input vector is empty")]
    EmptyInput,
    #[error("convolution length {len} exceeds the ceiling of {max}")]
    LengthCeiling { len: usize, max: usize },
    #[error("limit must be at least 1")]
    ZeroLimit,
    #[error("0 is not a legal move")]
    ZeroMove,
    #[error("game `{0}` has hotspots; this solver only handles plain subtraction games")]
    HotspotsPresent(String),
    #[error("heap size {heap} is outside the table range [0, {limit})")]
    HeapOutOfRange { heap: usize, limit: usize },
    #[error("digit base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("fit needs at least two distinct x values")]
    DegenerateX,
    #[error("fit coordinates must be positive and finite, got ({0}, {1})")]
    NonPositiveCoordinate(f64, f64),
    #[error("invalid game selector `{0}`")]
    InvalidGame(String),
}

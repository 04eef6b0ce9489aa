use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p={p}, p'={p_prime} is not a coprime pair with 0 < p < p'")]
    InvalidModel { p: i64, p_prime: i64 },
    #[error("height {height} at index {index} is outside [1, {max}]")]
    HeightOutOfRange { index: usize, height: i64, max: i64 },
    #[error("non-unit step between indices {index} and {}", index + 1)]
    NonUnitStep { index: usize },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("L + a - b must be even (L={len}, a={a}, b={b})")]
    ParityMismatch { len: usize, a: i64, b: i64 },
    #[error("post-endpoint c={c} must be b±1 inside [1, p'-1] (b={b})")]
    InvalidPostEndpoint { b: i64, c: i64 },
    #[error("band {0} is outside the band range")]
    BandOutOfRange(i64),
    #[error("vertex {0} is not a peak")]
    NotAPeak(usize),
    #[error("flip at vertex {0} leaves the height range")]
    FlipOutOfRange(usize),
    #[error("path is not a ground-state path (a=b=s0, c=s0+1)")]
    NotGroundState,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate frame: mu and nu are both zero")]
    DegenerateFrame,
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    /// A quantity that must be real came out with a sizeable imaginary part.
    /// This signals a broken formula rather than bad input.
    #[error("conjugation broken: result {re} + {im}i is not real")]
    ConjugationBroken { re: f64, im: f64 },
    #[error("finite-difference step {h} exceeds the limit {limit}")]
    StepTooLarge { h: f64, limit: f64 },
    #[error("|k| = {k} is below the floor k_min = {k_min}")]
    KTooSmall { k: f64, k_min: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resonant parameters: {0}")]
    Resonance(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("geometry guard violated: {0}")]
    Geometry(String),
    #[error("identity check failed: {0}")]
    Assertion(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn pole(re: f64, im: f64) -> Self {
        Error::Pole { re, im }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

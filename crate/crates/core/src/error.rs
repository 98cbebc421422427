use thiserror::Error;

/// Errors raised by the numerical routines and the data emitters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("transverse momentum is imaginary: energy {energy} is below E_parallel {e_parallel}")]
    ImaginaryTransverseMomentum { energy: f64, e_parallel: f64 },

    #[error("finite-difference step {step} is unusable at rho = {rho}")]
    StepUnderflow { step: f64, rho: f64 },

    #[error("probability density vanishes; velocity is undefined")]
    ZeroDensity,

    #[error("quadrature did not converge: |estimate| = {estimate:e}, error = {error:e} after {intervals} intervals")]
    Convergence {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("{what}: no convergence after {iters} iterations")]
    NonConvergence { what: &'static str, iters: usize },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("energy {energy} lies within {tol:e} of a discrete level; use the level weight")]
    NearPole { energy: f64, tol: f64 },

    #[error("level at E = {energy} has vanishing weight")]
    DegenerateWeight { energy: f64 },

    #[error("root search did not converge in bracket [{lo}, {hi}]")]
    RootNotConverged { lo: f64, hi: f64 },

    #[error("unsupported channel: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn pole(z: num_complex::Complex64) -> Self {
        Error::Pole { re: z.re, im: z.im }
    }

    /// Errors caused by the caller's input rather than by the numerics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Domain(_) | Error::Unsupported(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Spectral parameter inside the closed band where the resolvent is singular.
    #[error("spectral parameter z = {z} lies in the band [{lo}, {hi}]")]
    Domain { z: f64, lo: f64, hi: f64 },

    #[error("integrand is not finite at node ({p1}, {p2}, {p3}): {value}")]
    NonFinite { p1: f64, p2: f64, p3: f64, value: f64 },

    #[error("invalid grid size {n}: {reason}")]
    GridSize { n: usize, reason: &'static str },

    #[error("critical curve has a pole at mu1 = {mu1}")]
    Pole { mu1: f64 },

    /// More determinant zeros than the interaction rank allows.
    #[error("found {found} sign changes but at most {max} zeros are possible: {context}")]
    Inconsistency { found: usize, max: usize, context: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate eigenvector at z = {z}")]
    DegenerateEigenvector { z: f64 },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by bad inputs rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::GridSize { .. }
                | Error::Pole { .. }
                | Error::Precondition(_)
                | Error::InvalidArgument(_)
        )
    }
}

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modular parameter must lie in the upper half-plane, got tau = {0}")]
    NotInUpperHalfPlane(Complex64),

    #[error("invalid series policy: {0}")]
    InvalidPolicy(String),

    #[error("{what} did not converge within {max_terms} terms")]
    NonConvergence { what: &'static str, max_terms: usize },

    #[error("index {index} outside supported range {min}..={max} for {what}")]
    OutOfRange {
        what: &'static str,
        index: i64,
        min: i64,
        max: i64,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("argument {z} lies within {margin:e} of the period lattice")]
    NearLattice { z: Complex64, margin: f64 },

    #[error("z = {z} is outside the strip |Im z| < Im tau = {tau_im}")]
    OutsideStrip { z: Complex64, tau_im: f64 },

    #[error("argument {0} lies on the branch cut")]
    OnBranchCut(Complex64),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by arguments outside an operation's domain.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotInUpperHalfPlane(_)
                | Error::InvalidPolicy(_)
                | Error::OutOfRange { .. }
                | Error::NearLattice { .. }
                | Error::OutsideStrip { .. }
                | Error::OnBranchCut(_)
                | Error::Domain(_)
                | Error::NonConvergence { .. }
                | Error::Overflow(_)
        )
    }
}

use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite argument {0}")]
    NonFinite(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("singular point: {what} at {at}")]
    Singular { what: &'static str, at: f64 },

    #[error("{what} has dimension {dimension}, above the cap {cap}")]
    SizeLimit {
        what: String,
        dimension: usize,
        cap: usize,
    },

    #[error("complex is not downward closed: face {missing:?} of {simplex:?} is missing")]
    NotDownwardClosed {
        simplex: Vec<usize>,
        missing: Vec<usize>,
    },

    #[error("expected a cochain of degree {expected} with {len} coefficients, got degree {found} with {found_len}")]
    CochainShape {
        expected: usize,
        len: usize,
        found: usize,
        found_len: usize,
    },

    #[error("degree {degree} is the top degree; no higher forms exist")]
    TopDegree { degree: usize },

    #[error("no spectral gap: eigenvalue {eigenvalue:e} lies within a factor 10 of the kernel tolerance {tol:e}")]
    SpectralGap { eigenvalue: f64, tol: f64 },

    #[error("precondition failed: {what} measured {measured:e}, bound {bound:e}")]
    Precondition {
        what: &'static str,
        measured: f64,
        bound: f64,
    },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NotConverged { sweeps: usize, off: f64 },

    #[error("geodesic left the chart at t = {time} near ({x}, {y})")]
    LeftChart { time: f64, x: f64, y: f64 },

    #[error("point ({x}, {y}) is outside the chart rectangle")]
    OutsideChart { x: f64, y: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn check_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}

use thiserror::Error;

/// Errors raised by the dilatation toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    #[error("quadratic form is not definite (determinant {determinant:e})")]
    NotDefinite { determinant: f64 },
    #[error("point {re} + {im}i lies outside the open unit disc")]
    OutOfDisc { re: f64, im: f64 },
    #[error("point is not on the upper unit hemisphere")]
    OffHemisphere,
    #[error("linear map reverses orientation (det {det:e})")]
    OrientationReversing { det: f64 },
    #[error("linear map is singular (det {det:e})")]
    Singular { det: f64 },
    #[error("basis vector of a complex line must be non-zero")]
    ZeroBasis,
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotDefinite { .. } => "not_definite",
            Error::OutOfDisc { .. } => "out_of_disc",
            Error::OffHemisphere => "off_hemisphere",
            Error::OrientationReversing { .. } => "orientation_reversing",
            Error::Singular { .. } => "singular",
            Error::ZeroBasis => "zero_basis",
            Error::InvalidStep(_) => "invalid_step",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::symplectic::Ordering;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Error vocabulary shared by every module. [`Error::code`] gives the
/// machine-readable tag the CLI reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("block `{block}` is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { block: &'static str, asymmetry: f64 },

    #[error("λ± are complex: radicand (det a − det c)² + 4 det d = {radicand:e} < 0")]
    ComplexEigenvalueRegime { radicand: f64 },

    #[error("spectrum is elliptic: λ₊ = {lambda_plus}, λ₋ = {lambda_minus}; eigenvalues on the unit circle with phases {phases:?}")]
    EllipticSpectrum {
        lambda_plus: f64,
        lambda_minus: f64,
        /// `θ` for each λ < 0 (eigenvalues `e^{±iθ}`), `None` for hyperbolic pairs.
        phases: [Option<f64>; 2],
    },

    #[error("expected {expected:?} ordering, found {found:?}")]
    WrongOrdering { expected: Ordering, found: Ordering },

    #[error("cannot combine {left:?}-ordered and {right:?}-ordered matrices")]
    OrderingMismatch { left: Ordering, right: Ordering },

    #[error("matrix is not symplectic (residual {residual:e}, |det − 1| = {det_error:e})")]
    NotSymplectic { residual: f64, det_error: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("B block is singular (|det B| = {det:e})")]
    SingularB { det: f64 },

    #[error("quadrature not converged: doubling the order changed moments by {change:e}")]
    QuadratureNotConverged { change: f64 },

    #[error("state is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("matrix is not a point transform (|B| + |C| = {residual:e})")]
    NotPointTransform { residual: f64 },

    #[error("factor {factor} is not symmetric (lattice symmetric: {lattice}, coefficients symmetric: {coefficients})")]
    NotSymmetricFactor {
        factor: usize,
        lattice: bool,
        coefficients: bool,
    },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite(_) => "NonFinite",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::ComplexEigenvalueRegime { .. } => "ComplexEigenvalueRegime",
            Error::EllipticSpectrum { .. } => "EllipticSpectrum",
            Error::WrongOrdering { .. } => "WrongOrdering",
            Error::OrderingMismatch { .. } => "OrderingMismatch",
            Error::NotSymplectic { .. } => "NotSymplectic",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::SingularB { .. } => "SingularB",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::NotPointTransform { .. } => "NotPointTransform",
            Error::NotSymmetricFactor { .. } => "NotSymmetric",
            Error::LengthMismatch(_) => "LengthMismatch",
        }
    }
}

//! Closed-form exponential map for sp(4,ℝ) and its uses for two-mode
//! Gaussian and polymer states.

pub mod error;
pub mod gaussian;
pub mod io;
pub mod linalg;
pub mod polymer;
pub mod scalar;
pub mod special_forms;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Mat2, Mat4};
pub use scalar::Scalar;
pub use symplectic::Ordering;

pub type Lie = symplectic::LieAlgebraElement<f64>;
pub type Sympl = symplectic::SymplecticMatrix<f64>;
pub type Covariance = gaussian::CovarianceMatrix<f64>;
pub type Polymer = polymer::PolymerState<f64>;

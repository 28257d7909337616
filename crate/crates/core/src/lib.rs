pub mod error;
pub mod numeric;
pub mod tol;

pub use error::{DirimixError, Result};
pub use numeric::{MultiIndex, PositiveVector, Rational, Scalar};

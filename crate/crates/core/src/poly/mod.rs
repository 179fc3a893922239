//! Exact scalars, monomials and polynomials in `z` and `zbar`.

mod monomial;
mod point;
#[allow(clippy::module_inception)]
mod poly;
mod scalar;

pub use monomial::Monomial;
pub use point::Point;
pub use poly::Poly;
pub use scalar::{GaussianRational, ScalarParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

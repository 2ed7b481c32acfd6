//! Exact scalars and dense matrices.
//!
//! Everything downstream is generic over [`Scalar`]; the two concrete fields
//! are [`Rational`] (arbitrary precision) and [`F32003`].

mod matrix;
mod poly;
mod scalar;
mod span;

pub use matrix::{LinalgError, Matrix, Rref};
pub use num_traits::{One, Zero};
pub use poly::Poly;
pub use scalar::{Fp, Scalar};
pub use span::Span;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// The prime field of order 32003.
pub type F32003 = Fp<32003>;

pub type QMatrix = Matrix<Rational>;
pub type FpMatrix = Matrix<F32003>;

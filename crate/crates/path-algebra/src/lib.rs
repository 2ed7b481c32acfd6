//! Finite-dimensional quiver algebras `kQ/I`.
//!
//! Paths compose left to right: the path `a b` means "first `a`, then `b`".
//! Modules are right modules, `P_i = e_i Λ`, and a morphism `P_i -> P_j` is
//! left multiplication by an element of `e_j Λ e_i`, i.e. a combination of
//! paths from `j` to `i`.

mod algebra;
mod quiver;

pub use algebra::{Algebra, Elem, Relation, DEFAULT_MAX_LEN};
pub use quiver::{Arrow, Path, Quiver};

use exact_linalg::{Rational, F32003};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("inadmissible relation: {0}")]
    InadmissibleRelation(String),
    #[error("not finite-dimensional within max_len {0}")]
    NotFiniteDimensional(usize),
}

pub type QAlgebra = Algebra<Rational>;
pub type FpAlgebra = Algebra<F32003>;

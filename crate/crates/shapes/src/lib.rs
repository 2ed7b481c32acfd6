//! Split patterns of chain maps between minimal complexes, their standard
//! forms, and the reduced cone built from them.
//!
//! A map `f: X -> Y` is smonic when every component is a split mono, sepic
//! when every component is a split epi, and sirreducible at `i` when it is a
//! split epi below `i`, a split mono above `i`, and an irreducible radical map
//! at `i`.

mod blocks;
mod classify;
mod endo;
mod reduced;
pub mod sample;
mod split;
mod standard;
mod support;
mod theorem;
mod triangle_iso;

pub use classify::{classify, MorphClass};
pub use endo::{decompose, indecomposability, is_indecomposable_k, EndAlgebra, Indecomposability, Summand};
pub use reduced::{reduced_cone, ReducedCone};
pub use split::{split_pattern, DegreeSplit, PatternShape, SplitKind, SplitPattern, Splitting};
pub use standard::{standard_form, StandardForm};
pub use support::{no_irreducible_by_pd, orthogonality_check, support_checks, ClauseCheck, SupportReport};
pub use theorem::{theorem2_shape, ShapeReport};
pub use triangle_iso::{k_inverse, k_isomorphism, verify_triangle_iso, TriangleIso};

use exact_linalg::{Rational, F32003};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("both ends are zero")]
    ZeroEnds,
    #[error("map is an isomorphism")]
    Isomorphism,
    #[error("map is neither smonic, sepic nor sirreducible")]
    Unclassified,
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error(transparent)]
    Complex(#[from] complexes::ComplexError),
    #[error(transparent)]
    Rep(#[from] quiver_rep::RepError),
}

pub type QStandardForm = StandardForm<Rational>;
pub type FpStandardForm = StandardForm<F32003>;

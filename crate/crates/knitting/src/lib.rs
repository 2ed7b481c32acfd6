//! Auslander-Reiten theory in the bounded homotopy category of projectives:
//! the Nakayama functor, the translate, AR triangles and their verification,
//! and knitting of the component through a slice.

mod ar;
mod component;
mod table;
mod translate;

pub use ar::{verify_ar, ARTriangleRecord, ArReport};
pub use component::{knit_component, ARComponent, ArrowOrigin, CompArrow, Mesh, Node, Slice, SliceArrow};
pub use quiver_rep::Direction;
pub use table::{classify_component_arrows, ComponentTable};
pub use translate::Translator;

use exact_linalg::{Rational, F32003};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnitError {
    #[error("infinite global dimension suspected: simple {vertex} does not resolve within {max_len} steps")]
    InfiniteGlobalDimension { vertex: usize, max_len: usize },
    #[error("not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("Hom(Z, tau Z[1]) vanishes for {0}")]
    NoConnectingMap(String),
    #[error("no socle element in Hom(Z, tau Z[1]) for {0}")]
    NoSocle(String),
    #[error("mesh inconsistency: {0}")]
    MeshInconsistency(String),
    #[error("invalid slice: {0}")]
    InvalidSlice(String),
    #[error(transparent)]
    Shape(#[from] shapes::ShapeError),
    #[error(transparent)]
    Rep(#[from] quiver_rep::RepError),
    #[error(transparent)]
    Complex(#[from] complexes::ComplexError),
    #[error(transparent)]
    Algebra(#[from] path_algebra::AlgebraError),
}

pub type QComponent = ARComponent<Rational>;
pub type FpComponent = ARComponent<F32003>;

#[cfg(test)]
pub(crate) mod test_support {
    use exact_linalg::Rational;
    use path_algebra::{Algebra, Elem, Quiver, Relation};

    pub fn a3() -> Algebra<Rational> {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")]).unwrap();
        let r = Relation::monomial(q.parse_path("b a").unwrap());
        Algebra::build(q, vec![r], 8).unwrap()
    }

    pub fn a3_hereditary() -> Algebra<Rational> {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")]).unwrap();
        Algebra::build(q, vec![], 8).unwrap()
    }

    pub fn a5() -> Algebra<Rational> {
        let q = Quiver::new(
            &["1", "2", "3", "4", "5"],
            &[("delta", "2", "1"), ("gamma", "3", "2"), ("beta", "4", "3"), ("alpha", "5", "4")],
        )
        .unwrap();
        let r = Relation::monomial(q.parse_path("alpha beta gamma delta").unwrap());
        Algebra::build(q, vec![r], 8).unwrap()
    }

    pub fn elem(alg: &Algebra<Rational>, path: &str) -> Elem<Rational> {
        alg.path_elem(&alg.quiver().parse_path(path).unwrap())
    }
}

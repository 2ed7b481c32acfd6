//! Right modules as quiver representations.
//!
//! A representation assigns a space `M_v` to each vertex and to each arrow
//! `a: s -> t` a matrix `M_t × M_s`; the path `a1 a2 .. ak` acts as
//! `A_ak ⋯ A_a1`. `P_i` has basis the paths starting at `i`, and `I_i` is the
//! dual of the paths ending at `i`.

mod modules;
mod rep;
mod resolve;
mod translate;

pub use modules::{
    column_to_vector, generator_map, hom_matrix_morphism, injective, nakayama_morphism, projective,
    projective_cover, simple, standard_module, vector_to_column, ModuleKind,
};
pub use rep::{find_isomorphism, hom_rep, top_and_radical, RepMorphism, Representation, SubRep};
pub use resolve::{
    homology_dims, is_module_resolution, lift_map, min_proj_resolution, nakayama_complex, presentation,
    resolve_complex, zeroth_homology, ModComplex, Resolution, DEFAULT_MAX_RES,
};
pub use translate::{
    ar_translate_mod, dual_rep, has_injective_summand, has_projective_summand, Direction,
};

use exact_linalg::Rational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation {0} does not vanish on the representation")]
    RelationFails(usize),
    #[error("arrow {0} does not commute with the morphism")]
    NotMorphism(usize),
    #[error("resolution exceeds max_len {0}")]
    ResolutionTooLong(usize),
    #[error("module has a projective summand")]
    ProjectiveSummand,
    #[error("module has an injective summand")]
    InjectiveSummand,
    #[error("lifting system is inconsistent at degree {0}")]
    NoLift(i64),
    #[error(transparent)]
    Algebra(#[from] path_algebra::AlgebraError),
}

pub type QRep = Representation<Rational>;

#[cfg(test)]
pub(crate) mod test_support {
    use exact_linalg::Rational;
    use path_algebra::{Algebra, Elem, Quiver, Relation};

    fn a3_quiver() -> Quiver {
        Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")]).unwrap()
    }

    pub fn a3_hereditary() -> Algebra<Rational> {
        Algebra::build(a3_quiver(), vec![], 8).unwrap()
    }

    pub fn a3() -> Algebra<Rational> {
        let q = a3_quiver();
        let r = Relation::monomial(q.parse_path("b a").unwrap());
        Algebra::build(q, vec![r], 8).unwrap()
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

//! Bounded complexes of finitely generated projective modules.
//!
//! A cell is a list of vertices `[v1, v2, ..]` standing for `P_v1 ⊕ P_v2 ⊕ ..`;
//! a differential is a [`HomMatrix`] whose `(r, c)` entry lies in
//! `e_row Λ e_col`. Conventions:
//!
//! * shift: `X[k]^n = X^(n+k)` with differential `(-1)^k d`;
//! * cone of `f: X -> Y`: `C^n = X^(n+1) ⊕ Y^n`, differential `[[-d, 0], [f, ∂]]`;
//! * homotopy `s` with `s^n: X^n -> Y^(n-1)` witnesses `f - g = ∂s + sd`.

mod complex;
mod cone;
mod dual;
mod hom;
mod hom_matrix;
mod maps;
mod minimize;
pub mod random;

pub use complex::ProjComplex;
pub use cone::{cone, Cone};
pub use dual::{dual_complex, dual_map};
pub use hom::{hom_k, homotopic, is_null_homotopic, HomK, MapSpace};
pub use hom_matrix::HomMatrix;
pub use maps::{compose, ChainMap, Homotopy, Triangle};
pub use minimize::{minimize, Minimized};

use exact_linalg::Rational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry ({row}, {col}) in degree {degree} does not lie in the right Hom-space")]
    WrongBlock { degree: i64, row: usize, col: usize },
    #[error("d∘d ≠ 0 at degree {0}")]
    NotComplex(i64),
    #[error("not a chain map at degree {0}")]
    NotChainMap(i64),
    #[error("endpoints do not match: {0}")]
    Mismatch(String),
    #[error("complex is not minimal")]
    NotMinimal,
}

pub type QComplex = ProjComplex<Rational>;
pub type QChainMap = ChainMap<Rational>;

#[cfg(test)]
pub(crate) mod tests_support {
    use exact_linalg::Rational;
    use path_algebra::{Algebra, Elem, Quiver, Relation};

    pub fn a3() -> Algebra<Rational> {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")]).unwrap();
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

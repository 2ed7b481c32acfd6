use std::fmt;

use complexes::ChainMap;
use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::split::{split_pattern, PatternShape, SplitPattern};
use crate::ShapeError;

#[derive(Clone)]
pub enum MorphClass<F> {
    Smonic,
    Sepic,
    /// `flagged` marks a decomposable cell at the pivot, where
    /// irreducibility of the component is not decided.
    Sirreducible { degree: i64, flagged: bool },
    Unclassified(SplitPattern<F>),
}

impl<F> MorphClass<F> {
    pub fn name(&self) -> &'static str {
        match self {
            MorphClass::Smonic => "smonic",
            MorphClass::Sepic => "sepic",
            MorphClass::Sirreducible { .. } => "sirreducible",
            MorphClass::Unclassified(_) => "unclassified",
        }
    }

    pub fn pivot(&self) -> Option<i64> {
        match self {
            MorphClass::Sirreducible { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, MorphClass::Unclassified(_))
    }

    /// Same class, ignoring the unclassified pattern's witnesses.
    pub fn same_class(&self, other: &Self) -> bool {
        match (self, other) {
            (MorphClass::Sirreducible { degree: a, .. }, MorphClass::Sirreducible { degree: b, .. }) => a == b,
            _ => self.name() == other.name(),
        }
    }
}

impl<F> fmt::Debug for MorphClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphClass::Sirreducible { degree, flagged } => {
                write!(f, "Sirreducible({degree}{})", if *flagged { ", flagged" } else { "" })
            }
            other => write!(f, "{}", other.name()),
        }
    }
}

impl<F> fmt::Display for MorphClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphClass::Sirreducible { degree, .. } => write!(f, "sirreducible({degree})"),
            other => write!(f, "{}", other.name()),
        }
    }
}

/// Smonic, sepic, sirreducible at a unique pivot, or unclassified.
pub fn classify<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Result<MorphClass<F>, ShapeError> {
    let (x, y) = (f.source(), f.target());
    if x.is_zero() && y.is_zero() {
        return Err(ShapeError::ZeroEnds);
    }
    let pattern = split_pattern(alg, f);
    Ok(match pattern.shape() {
        PatternShape::Iso => return Err(ShapeError::Isomorphism),
        PatternShape::Mono => MorphClass::Smonic,
        PatternShape::Epi => MorphClass::Sepic,
        PatternShape::Pivot(i) => {
            let comp = f.comp(alg, i);
            let (src, dst) = (x.cell(i), y.cell(i));
            if comp.is_zero() {
                MorphClass::Unclassified(pattern)
            } else if src.len() == 1 && dst.len() == 1 {
                if comp.is_radical(alg) && alg.is_arrow_class(comp.get(0, 0)) {
                    MorphClass::Sirreducible { degree: i, flagged: false }
                } else {
                    MorphClass::Unclassified(pattern)
                }
            } else {
                // Irreducibility between decomposable cells is not decided.
                MorphClass::Sirreducible { degree: i, flagged: true }
            }
        }
        PatternShape::Other => MorphClass::Unclassified(pattern),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{a5, elem};
    use complexes::{HomMatrix, ProjComplex};

    fn res(alg: &Algebra<exact_linalg::Rational>, top: usize, path: &str) -> ProjComplex<exact_linalg::Rational> {
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(alg, path));
        ProjComplex::new(alg, -1, vec![vec![0], vec![top]], vec![d]).unwrap()
    }

    #[test]
    fn smonic_stalk_into_resolution() {
        let alg = a5();
        let y = res(&alg, 3, "beta gamma delta");
        let x = ProjComplex::stalk(vec![3], 0);
        let f = ChainMap::from_fn(x, y, |_| HomMatrix::identity(&alg, &[3]));
        assert_eq!(classify(&alg, &f).unwrap().name(), "smonic");
    }

    #[test]
    fn sepic_resolution_onto_shifted_stalk() {
        let alg = a5();
        let x = res(&alg, 3, "beta gamma delta");
        let y = ProjComplex::stalk(vec![0], -1);
        let f = ChainMap::from_fn(x, y, |_| HomMatrix::identity(&alg, &[0]));
        assert!(f.is_chain_map(&alg));
        assert_eq!(classify(&alg, &f).unwrap().name(), "sepic");
    }

    #[test]
    fn slice_map_is_sirreducible_at_zero() {
        let alg = a5();
        let x = res(&alg, 1, "delta");
        let y = res(&alg, 2, "gamma delta");
        let f = ChainMap::new(
            &alg,
            x,
            y,
            [
                (-1, HomMatrix::identity(&alg, &[0])),
                (0, HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "gamma"))),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let c = classify(&alg, &f).unwrap();
        assert_eq!(c.pivot(), Some(0));
        assert!(matches!(c, MorphClass::Sirreducible { flagged: false, .. }));
    }

    #[test]
    fn square_of_arrows_is_unclassified() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![0], 0);
        let y = ProjComplex::stalk(vec![2], 0);
        let f = ChainMap::from_fn(x, y, |_| HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "gamma delta")));
        assert!(!classify(&alg, &f).unwrap().is_classified());
    }

    #[test]
    fn isomorphisms_and_zero_rejected() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![0], 0);
        assert_eq!(classify(&alg, &ChainMap::identity(&alg, &x)).err(), Some(ShapeError::Isomorphism));
        let z = ProjComplex::zero();
        assert_eq!(classify(&alg, &ChainMap::zero(&z, &z)).err(), Some(ShapeError::ZeroEnds));
    }
}

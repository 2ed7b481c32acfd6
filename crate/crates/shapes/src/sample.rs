//! Seeded samplers for classified maps, scrambled by random automorphisms so
//! that standard forms have to be recovered.

use complexes::random::{random_automorphism, random_chain_map, random_minimal_complex};
use complexes::{compose, cone, ChainMap};
use exact_linalg::Scalar;
use path_algebra::Algebra;
use rand::Rng;

use crate::classify::{classify, MorphClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Smonic,
    Sepic,
    Sirreducible,
}

impl ClassKind {
    pub const ALL: [ClassKind; 3] = [ClassKind::Smonic, ClassKind::Sepic, ClassKind::Sirreducible];

    pub fn matches<F>(self, c: &MorphClass<F>) -> bool {
        matches!(
            (self, c),
            (ClassKind::Smonic, MorphClass::Smonic)
                | (ClassKind::Sepic, MorphClass::Sepic)
                | (ClassKind::Sirreducible, MorphClass::Sirreducible { .. })
        )
    }
}

fn candidate<F: Scalar, R: Rng>(alg: &Algebra<F>, rng: &mut R, kind: ClassKind) -> Option<ChainMap<F>> {
    match kind {
        ClassKind::Smonic | ClassKind::Sepic => {
            let y = random_minimal_complex(alg, rng, -1, 3, 2);
            let w_lo = rng.gen_range(-1..=1);
            let w = random_minimal_complex(alg, rng, w_lo, 2, 2);
            let b = random_chain_map(alg, rng, &w, &y);
            let c = cone(alg, &b);
            if !c.complex.is_minimal(alg) {
                return None;
            }
            Some(if kind == ClassKind::Smonic { c.inclusion } else { c.projection })
        }
        ClassKind::Sirreducible => {
            let x = random_minimal_complex(alg, rng, -1, 3, 2);
            let y = random_minimal_complex(alg, rng, -1, 3, 2);
            Some(random_chain_map(alg, rng, &x, &y))
        }
    }
}

/// A map of the requested class with scrambled bases on both ends, or `None`
/// after `tries` rejected candidates.
pub fn sample_classified<F: Scalar, R: Rng>(alg: &Algebra<F>, rng: &mut R, kind: ClassKind, tries: usize) -> Option<ChainMap<F>> {
    for _ in 0..tries {
        let Some(f) = candidate(alg, rng, kind) else { continue };
        if !f.source().is_minimal(alg) || !f.target().is_minimal(alg) {
            continue;
        }
        let Ok(class) = classify(alg, &f) else { continue };
        if !kind.matches(&class) {
            continue;
        }
        let (x2, _, x_back) = random_automorphism(alg, rng, f.source());
        let (y2, y_there, _) = random_automorphism(alg, rng, f.target());
        let g = compose(alg, &y_there, &compose(alg, &f, &x_back).ok()?).ok()?;
        return Some(g.with_ends(x2, y2));
    }
    None
}

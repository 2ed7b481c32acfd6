use std::collections::BTreeMap;
use std::fmt;

use complexes::{ChainMap, HomMatrix};
use exact_linalg::{Matrix, Scalar};
use path_algebra::Algebra;

use crate::blocks::concat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitKind {
    Mono,
    Epi,
    Both,
    Neither,
}

impl SplitKind {
    pub fn is_mono(self) -> bool {
        matches!(self, SplitKind::Mono | SplitKind::Both)
    }

    pub fn is_epi(self) -> bool {
        matches!(self, SplitKind::Epi | SplitKind::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            SplitKind::Mono => "splitMono",
            SplitKind::Epi => "splitEpi",
            SplitKind::Both => "both",
            SplitKind::Neither => "neither",
        }
    }
}

/// One side of a splitting: the witness plus the basis change that puts the
/// component into block form.
#[derive(Clone)]
pub struct Splitting<F> {
    /// Retraction `r f = 1` for a mono, section `f s = 1` for an epi.
    pub witness: HomMatrix<F>,
    /// Indices of the complementary cells (target cells for a mono, source
    /// cells for an epi).
    pub complement: Vec<usize>,
    /// Mono: `[f | incl]`, an iso `X ⊕ Y' -> Y`. Epi: `[f ; proj]`, an iso
    /// `X -> Y ⊕ X'`.
    pub change: HomMatrix<F>,
    pub change_inv: HomMatrix<F>,
}

#[derive(Clone)]
pub struct DegreeSplit<F> {
    pub kind: SplitKind,
    pub mono: Option<Splitting<F>>,
    pub epi: Option<Splitting<F>>,
}

impl<F: Scalar> DegreeSplit<F> {
    /// Retraction, section, or inverse, whichever applies.
    pub fn witness(&self) -> Option<&HomMatrix<F>> {
        match self.kind {
            SplitKind::Mono => self.mono.as_ref().map(|s| &s.witness),
            SplitKind::Epi | SplitKind::Both => self.epi.as_ref().map(|s| &s.witness),
            SplitKind::Neither => None,
        }
    }
}

#[derive(Clone)]
pub struct SplitPattern<F> {
    pub degrees: BTreeMap<i64, DegreeSplit<F>>,
}

/// The arrangement of split degrees, ignoring which map it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternShape {
    Iso,
    Mono,
    Epi,
    /// Exactly one non-split degree, split epi below and split mono above.
    Pivot(i64),
    Other,
}

impl<F: Scalar> SplitPattern<F> {
    pub fn kind(&self, n: i64) -> SplitKind {
        self.degrees.get(&n).map_or(SplitKind::Both, |d| d.kind)
    }

    pub fn shape(&self) -> PatternShape {
        let kinds: Vec<(i64, SplitKind)> = self.degrees.iter().map(|(n, d)| (*n, d.kind)).collect();
        if kinds.iter().all(|(_, k)| *k == SplitKind::Both) {
            return PatternShape::Iso;
        }
        if kinds.iter().all(|(_, k)| k.is_mono()) {
            return PatternShape::Mono;
        }
        if kinds.iter().all(|(_, k)| k.is_epi()) {
            return PatternShape::Epi;
        }
        let neither: Vec<i64> = kinds.iter().filter(|(_, k)| *k == SplitKind::Neither).map(|(n, _)| *n).collect();
        if let [i] = neither[..] {
            let below = kinds.iter().filter(|(n, _)| *n < i).all(|(_, k)| k.is_epi());
            let above = kinds.iter().filter(|(n, _)| *n > i).all(|(_, k)| k.is_mono());
            if below && above {
                return PatternShape::Pivot(i);
            }
        }
        PatternShape::Other
    }

    /// Checks every witness by multiplication against `f`.
    pub fn verify(&self, alg: &Algebra<F>, f: &ChainMap<F>) -> bool {
        self.degrees.iter().all(|(&n, d)| {
            let (src, dst) = (f.source().cell(n), f.target().cell(n));
            let comp = f.comp(alg, n);
            let mono_ok = d.mono.as_ref().map_or(true, |s| {
                s.witness.mul(alg, &comp) == HomMatrix::identity(alg, src)
                    && s.change.mul(alg, &s.change_inv) == HomMatrix::identity(alg, dst)
            });
            let epi_ok = d.epi.as_ref().map_or(true, |s| {
                comp.mul(alg, &s.witness) == HomMatrix::identity(alg, dst)
                    && s.change_inv.mul(alg, &s.change) == HomMatrix::identity(alg, src)
            });
            let present = match d.kind {
                SplitKind::Mono => d.mono.is_some(),
                SplitKind::Epi => d.epi.is_some(),
                SplitKind::Both => d.mono.is_some() && d.epi.is_some(),
                SplitKind::Neither => d.mono.is_none() && d.epi.is_none(),
            };
            mono_ok && epi_ok && present
        })
    }
}

impl<F: Scalar> fmt::Display for SplitPattern<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|(n, d)| format!("{n}:{}", d.kind.name())).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Pivot columns of `[m | 1]` beyond the first `m.cols()`: the unit vectors
/// completing the columns of `m` to a basis.
fn completion<F: Scalar>(m: &Matrix<F>) -> Vec<usize> {
    let joined = m.hstack(&Matrix::identity(m.rows()));
    joined
        .rref()
        .pivots
        .iter()
        .filter(|&&p| p >= m.cols())
        .map(|&p| p - m.cols())
        .collect()
}

fn mono_splitting<F: Scalar>(alg: &Algebra<F>, f: &HomMatrix<F>, src: &[usize], dst: &[usize]) -> Option<Splitting<F>> {
    let scalar = f.scalar_part(alg, dst, src);
    if scalar.rank() != src.len() {
        return None;
    }
    let complement = completion(&scalar);
    let incl = HomMatrix::identity(alg, dst).select_cols(&complement);
    let change = f.hstack(&incl);
    let cells: Vec<usize> = concat(src, &complement.iter().map(|&k| dst[k]).collect::<Vec<_>>());
    let change_inv = change.inverse(alg, dst, &cells)?;
    Some(Splitting {
        witness: change_inv.row_range(0, src.len()),
        complement,
        change,
        change_inv,
    })
}

fn epi_splitting<F: Scalar>(alg: &Algebra<F>, f: &HomMatrix<F>, src: &[usize], dst: &[usize]) -> Option<Splitting<F>> {
    let scalar = f.scalar_part(alg, dst, src);
    if scalar.rank() != dst.len() {
        return None;
    }
    let complement = completion(&scalar.transpose());
    let proj = HomMatrix::identity(alg, src).select_rows(&complement);
    let change = f.vstack(&proj);
    let cells: Vec<usize> = concat(dst, &complement.iter().map(|&k| src[k]).collect::<Vec<_>>());
    let change_inv = change.inverse(alg, &cells, src)?;
    Some(Splitting {
        witness: change_inv.col_range(0, dst.len()),
        complement,
        change,
        change_inv,
    })
}

/// Per-degree split behaviour of `f` with explicit witnesses.
pub fn split_pattern<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> SplitPattern<F> {
    let (x, y) = (f.source(), f.target());
    let mut degrees = BTreeMap::new();
    let nonzero: Vec<i64> = x.degrees().chain(y.degrees()).collect();
    let (Some(&lo), Some(&hi)) = (nonzero.iter().min(), nonzero.iter().max()) else {
        return SplitPattern { degrees };
    };
    for n in lo..=hi {
        let (src, dst) = (x.cell(n), y.cell(n));
        if src.is_empty() && dst.is_empty() {
            continue;
        }
        let comp = f.comp(alg, n);
        let mono = mono_splitting(alg, &comp, src, dst);
        let epi = epi_splitting(alg, &comp, src, dst);
        let kind = match (mono.is_some(), epi.is_some()) {
            (true, true) => SplitKind::Both,
            (true, false) => SplitKind::Mono,
            (false, true) => SplitKind::Epi,
            (false, false) => SplitKind::Neither,
        };
        degrees.insert(n, DegreeSplit { kind, mono, epi });
    }
    SplitPattern { degrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{a5, elem};
    use complexes::ProjComplex;

    #[test]
    fn identity_is_both_everywhere() {
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let x = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![d]).unwrap();
        let f = ChainMap::identity(&alg, &x);
        let p = split_pattern(&alg, &f);
        assert_eq!(p.shape(), PatternShape::Iso);
        assert!(p.verify(&alg, &f));
    }

    #[test]
    fn zero_objects_split() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![0], 1);
        let y = ProjComplex::stalk(vec![2], 0);
        let f = ChainMap::zero(&x, &y);
        let p = split_pattern(&alg, &f);
        assert_eq!(p.kind(0), SplitKind::Mono);
        assert_eq!(p.kind(1), SplitKind::Epi);
        assert!(p.verify(&alg, &f));
    }

    #[test]
    fn stalk_into_resolution_is_mono() {
        // P4[0] -> (P1-P4)[0] with the identity in degree 0.
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "beta gamma delta"));
        let y = ProjComplex::new(&alg, -1, vec![vec![0], vec![3]], vec![d]).unwrap();
        let x = ProjComplex::stalk(vec![3], 0);
        let f = ChainMap::from_fn(x, y, |_| HomMatrix::identity(&alg, &[3]));
        let p = split_pattern(&alg, &f);
        assert_eq!(p.kind(-1), SplitKind::Mono);
        assert_eq!(p.kind(0), SplitKind::Both);
        assert_eq!(p.shape(), PatternShape::Mono);
        assert!(p.verify(&alg, &f));
    }

    #[test]
    fn arrow_is_neither() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![1], 0);
        let y = ProjComplex::stalk(vec![2], 0);
        let f = ChainMap::from_fn(x, y, |_| HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "gamma")));
        let p = split_pattern(&alg, &f);
        assert_eq!(p.shape(), PatternShape::Pivot(0));
    }

    #[test]
    fn scrambled_mono_witness() {
        // P2 -> P2 ⊕ P2 via (1, 2)ᵀ: split mono with a one-cell complement.
        let alg = a5();
        let x = ProjComplex::stalk(vec![1], 0);
        let y = ProjComplex::stalk(vec![1, 1], 0);
        let two = exact_linalg::Rational::from_integer(2.into());
        let f = ChainMap::from_fn(x, y, |_| {
            HomMatrix::from_fn(2, 1, |i, _| alg.scale(&if i == 0 { exact_linalg::Rational::from_integer(1.into()) } else { two.clone() }, &alg.unit(1)))
        });
        let p = split_pattern(&alg, &f);
        assert_eq!(p.kind(0), SplitKind::Mono);
        assert_eq!(p.degrees[&0].mono.as_ref().unwrap().complement.len(), 1);
        assert!(p.verify(&alg, &f));
    }
}

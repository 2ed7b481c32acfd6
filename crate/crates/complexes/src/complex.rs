use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::{ComplexError, HomMatrix};

/// A bounded complex of projectives. `cells[k]` sits in degree `lo + k`,
/// `diffs[k]` maps it to degree `lo + k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjComplex<F> {
    lo: i64,
    cells: Vec<Vec<usize>>,
    diffs: Vec<HomMatrix<F>>,
}

impl<F: Scalar> ProjComplex<F> {
    /// Validates shapes, Hom-blocks and `d∘d = 0`; trims empty end cells.
    pub fn new(
        alg: &Algebra<F>,
        lo: i64,
        cells: Vec<Vec<usize>>,
        diffs: Vec<HomMatrix<F>>,
    ) -> Result<Self, ComplexError> {
        if diffs.len() + 1 != cells.len() && !(cells.is_empty() && diffs.is_empty()) {
            return Err(ComplexError::Shape(format!(
                "{} cells need {} differentials, got {}",
                cells.len(),
                cells.len().saturating_sub(1),
                diffs.len()
            )));
        }
        if let Some(&v) = cells.iter().flatten().find(|&&v| v >= alg.vertex_count()) {
            return Err(ComplexError::Shape(format!("vertex index {v} out of range")));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != cells[k + 1].len() || d.cols() != cells[k].len() {
                return Err(ComplexError::Shape(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    cells[k + 1].len(),
                    cells[k].len()
                )));
            }
            if let Some((row, col)) = d.fits(alg, &cells[k + 1], &cells[k]) {
                return Err(ComplexError::WrongBlock {
                    degree: lo + k as i64,
                    row,
                    col,
                });
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(alg, &diffs[k - 1]).is_zero() {
                return Err(ComplexError::NotComplex(lo + k as i64 - 1));
            }
        }
        Ok(Self::trimmed(lo, cells, diffs))
    }

    /// Skips validation; callers guarantee the invariants.
    pub fn new_unchecked(lo: i64, cells: Vec<Vec<usize>>, diffs: Vec<HomMatrix<F>>) -> Self {
        debug_assert!(diffs.len() + 1 == cells.len() || cells.is_empty());
        Self::trimmed(lo, cells, diffs)
    }

    fn trimmed(mut lo: i64, mut cells: Vec<Vec<usize>>, mut diffs: Vec<HomMatrix<F>>) -> Self {
        while cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
            diffs.pop();
        }
        while cells.first().is_some_and(|c| c.is_empty()) {
            cells.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        if cells.is_empty() {
            return ProjComplex::zero();
        }
        ProjComplex { lo, cells, diffs }
    }

    pub fn zero() -> Self {
        ProjComplex {
            lo: 0,
            cells: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `⊕ P_v` over `cells`, concentrated in `degree`.
    pub fn stalk(cells: Vec<usize>, degree: i64) -> Self {
        Self::trimmed(degree, vec![cells], Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.cells.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn cell(&self, n: i64) -> &[usize] {
        if n < self.lo || n > self.hi() {
            &[]
        } else {
            &self.cells[(n - self.lo) as usize]
        }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// `d^n: X^n -> X^(n+1)`, zero-filled outside the support.
    pub fn diff(&self, alg: &Algebra<F>, n: i64) -> HomMatrix<F> {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            HomMatrix::zeros(alg, self.cell(n + 1).len(), self.cell(n).len())
        }
    }

    pub fn diff_ref(&self, n: i64) -> Option<&HomMatrix<F>> {
        if n >= self.lo && n < self.hi() {
            Some(&self.diffs[(n - self.lo) as usize])
        } else {
            None
        }
    }

    /// Total number of indecomposable summands.
    pub fn size(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    pub fn is_minimal(&self, alg: &Algebra<F>) -> bool {
        self.diffs.iter().all(|d| d.is_radical(alg))
    }

    /// `X[k]^n = X^(n+k)` with differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let diffs = if k.rem_euclid(2) == 1 {
            self.diffs.iter().map(|d| d.neg()).collect()
        } else {
            self.diffs.clone()
        };
        ProjComplex {
            lo: self.lo - k,
            cells: self.cells.clone(),
            diffs,
        }
    }

    /// The complex with the same cells over a new degree window, re-indexed.
    pub(crate) fn from_degree_fn(
        alg: &Algebra<F>,
        lo: i64,
        hi: i64,
        mut cell: impl FnMut(i64) -> Vec<usize>,
        mut diff: impl FnMut(i64) -> HomMatrix<F>,
    ) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let cells: Vec<Vec<usize>> = (lo..=hi).map(&mut cell).collect();
        let diffs: Vec<HomMatrix<F>> = (lo..hi).map(&mut diff).collect();
        let _ = alg;
        Self::new_unchecked(lo, cells, diffs)
    }

    /// Block sum; cells of `self` come first in every degree.
    pub fn direct_sum(&self, alg: &Algebra<F>, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        Self::from_degree_fn(
            alg,
            lo,
            hi,
            |n| {
                let mut c = self.cell(n).to_vec();
                c.extend_from_slice(other.cell(n));
                c
            },
            |n| HomMatrix::block_diag(alg, &self.diff(alg, n), &other.diff(alg, n)),
        )
    }

    /// Canonical name such as `(P1-P2)[0]`; requires a minimal complex.
    pub fn signature(&self, alg: &Algebra<F>) -> Result<String, ComplexError> {
        if !self.is_minimal(alg) {
            return Err(ComplexError::NotMinimal);
        }
        Ok(self.name(alg))
    }

    /// The signature format applied without the minimality check.
    pub fn name(&self, alg: &Algebra<F>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let q = alg.quiver();
        let cell_name = |c: &[usize]| -> String {
            if c.is_empty() {
                return "0".to_string();
            }
            let mut c = c.to_vec();
            c.sort_unstable();
            c.iter()
                .map(|&v| format!("P{}", q.vertex_name(v)))
                .collect::<Vec<_>>()
                .join("+")
        };
        let body: Vec<String> = self.cells.iter().map(|c| cell_name(c)).collect();
        let shift = -self.hi();
        if body.len() == 1 && self.cells[0].len() == 1 {
            format!("{}[{}]", body[0], shift)
        } else {
            format!("({})[{}]", body.join("-"), shift)
        }
    }

    /// `(degree, vertex)` multiset, sorted; equal for isomorphic minimal complexes.
    pub fn cell_profile(&self) -> Vec<(i64, Vec<usize>)> {
        self.degrees()
            .map(|n| {
                let mut c = self.cell(n).to_vec();
                c.sort_unstable();
                (n, c)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{a3, a5, elem};

    #[test]
    fn stalk_and_shift() {
        let alg = a3();
        let x = ProjComplex::<exact_linalg::Rational>::stalk(vec![2], 0);
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(1).shift(-1), x);
        let y = x.shift(1);
        assert_eq!(y.cell(-1), &[2]);
        assert_eq!(y.signature(&alg).unwrap(), "P3[1]");
        assert_eq!(x.signature(&alg).unwrap(), "P3[0]");
    }

    #[test]
    fn validation() {
        let alg = a5();
        let delta = elem(&alg, "delta");
        let d = HomMatrix::from_fn(1, 1, |_, _| delta.clone());
        let x = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![d.clone()]).unwrap();
        assert_eq!(x.signature(&alg).unwrap(), "(P1-P2)[0]");
        assert_eq!(x.shift(-1).signature(&alg).unwrap(), "(P1-P2)[-1]");
        assert!(x.is_minimal(&alg));
        assert!(matches!(
            ProjComplex::new(&alg, -1, vec![vec![1], vec![0]], vec![d]),
            Err(ComplexError::WrongBlock { .. })
        ));
        let id = HomMatrix::identity(&alg, &[0]);
        let y = ProjComplex::new(&alg, 0, vec![vec![0], vec![0]], vec![id]).unwrap();
        assert!(!y.is_minimal(&alg));
        assert!(y.signature(&alg).is_err());
    }

    #[test]
    fn d_squared_checked() {
        let alg = a5();
        let g = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "gamma"));
        let b = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "beta"));
        // P2 -> P3 -> P4 composes to beta gamma != 0.
        assert_eq!(
            ProjComplex::new(&alg, 0, vec![vec![1], vec![2], vec![3]], vec![g, b]),
            Err(ComplexError::NotComplex(0))
        );
    }

    #[test]
    fn direct_sum_adds_cells() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![0], 0);
        let y = ProjComplex::stalk(vec![3], 1);
        let s = x.direct_sum(&alg, &y);
        assert_eq!(s.size(), 2);
        assert_eq!(s.direct_sum(&alg, &ProjComplex::zero()), s);
        assert_eq!(s.signature(&alg).unwrap(), "(P1-P4)[-1]");
    }
}

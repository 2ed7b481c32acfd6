use std::collections::BTreeMap;

use complexes::{ChainMap, HomMatrix, ProjComplex};
use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::blocks::{concat, sub};
use crate::classify::{classify, MorphClass};
use crate::split::{split_pattern, Splitting};
use crate::ShapeError;

/// A map conjugated into block form around a pivot degree `i`:
/// below `i` the source is `X^j = Y^j ⊕ X'^j` and `f^j = (1 0)`, above `i` the
/// target is `Y^j = X^j ⊕ Y'^j` and `f^j = (1; 0)`. A smonic map uses a pivot
/// below both supports, a sepic one a pivot above them.
#[derive(Clone)]
pub struct StandardForm<F> {
    pub class: MorphClass<F>,
    pub pivot: i64,
    /// The conjugated map between the conjugated complexes.
    pub map: ChainMap<F>,
    /// `X -> X_std` and back.
    pub source_change: ChainMap<F>,
    pub source_restore: ChainMap<F>,
    /// `Y -> Y_std` and back.
    pub target_change: ChainMap<F>,
    pub target_restore: ChainMap<F>,
    /// Number of leading cells shared with the other complex: `|Y^j|` inside
    /// `X^j` below the pivot, `|X^j|` inside `Y^j` above it.
    pub shared: BTreeMap<i64, usize>,
    /// `X'^j` below the pivot, `Y'^j` above it.
    pub complement: BTreeMap<i64, Vec<usize>>,
    pub e: BTreeMap<i64, HomMatrix<F>>,
    pub a: BTreeMap<i64, HomMatrix<F>>,
    pub b: BTreeMap<i64, HomMatrix<F>>,
    /// `c^(i-1): Y^(i-1) -> X^i`.
    pub c: HomMatrix<F>,
    /// `ℓ^i: Y^i -> X^(i+1)`.
    pub ell: HomMatrix<F>,
}

impl<F: Scalar> StandardForm<F> {
    pub fn source(&self) -> &ProjComplex<F> {
        self.map.source()
    }

    pub fn target(&self) -> &ProjComplex<F> {
        self.map.target()
    }

    pub fn complement(&self, j: i64) -> &[usize] {
        self.complement.get(&j).map_or(&[], |v| v)
    }

    pub fn shared(&self, j: i64) -> usize {
        self.shared.get(&j).copied().unwrap_or(0)
    }

    pub(crate) fn degree_window(&self) -> (i64, i64) {
        let (x, y) = (self.source(), self.target());
        let mut lo = self.pivot - 1;
        let mut hi = self.pivot;
        for c in [x, y] {
            if !c.is_zero() {
                lo = lo.min(c.lo() - 1);
                hi = hi.max(c.hi() + 1);
            }
        }
        (lo, hi)
    }

    fn block(map: &BTreeMap<i64, HomMatrix<F>>, alg: &Algebra<F>, j: i64, rows: usize, cols: usize) -> HomMatrix<F> {
        map.get(&j).cloned().unwrap_or_else(|| HomMatrix::zeros(alg, rows, cols))
    }

    /// `e^j`: `X'^j -> X'^(j+1)` below the pivot (into `X^i` at `j = i-1`),
    /// `Y'^j -> Y'^(j+1)` from the pivot on (`Y'^i = Y^i`).
    pub fn e(&self, alg: &Algebra<F>, j: i64) -> HomMatrix<F> {
        let i = self.pivot;
        let (rows, cols) = if j < i - 1 {
            (self.complement(j + 1).len(), self.complement(j).len())
        } else if j == i - 1 {
            (self.source().cell(i).len(), self.complement(j).len())
        } else if j == i {
            (self.complement(i + 1).len(), self.target().cell(i).len())
        } else {
            (self.complement(j + 1).len(), self.complement(j).len())
        };
        Self::block(&self.e, alg, j, rows, cols)
    }

    /// `a^j: Y'^j -> X^(j+1)` for `j > i`.
    pub fn a(&self, alg: &Algebra<F>, j: i64) -> HomMatrix<F> {
        Self::block(&self.a, alg, j, self.source().cell(j + 1).len(), self.complement(j).len())
    }

    /// `b^j: Y^j -> X'^(j+1)` for `j < i - 1`.
    pub fn b(&self, alg: &Algebra<F>, j: i64) -> HomMatrix<F> {
        Self::block(&self.b, alg, j, self.complement(j + 1).len(), self.target().cell(j).len())
    }

    /// Conjugation produced exactly the block shapes.
    pub fn verify(&self, alg: &Algebra<F>) -> bool {
        let (x, y) = (self.source(), self.target());
        let i = self.pivot;
        let (lo, hi) = self.degree_window();
        let f = &self.map;
        let mut ok = f.is_chain_map(alg)
            && self.source_change.is_chain_map(alg)
            && self.target_change.is_chain_map(alg);
        for j in lo..=hi {
            let comp = f.comp(alg, j);
            if j < i {
                let ny = y.cell(j).len();
                let expect = HomMatrix::identity(alg, y.cell(j)).hstack(&HomMatrix::zeros(alg, ny, self.complement(j).len()));
                ok &= comp == expect;
                if j < i - 1 {
                    let d = x.diff(alg, j);
                    let upper_right = sub(&d, 0..y.cell(j + 1).len(), ny..x.cell(j).len());
                    ok &= upper_right.is_zero();
                }
            } else if j > i {
                let nx = x.cell(j).len();
                let expect = HomMatrix::identity(alg, x.cell(j)).vstack(&HomMatrix::zeros(alg, self.complement(j).len(), nx));
                ok &= comp == expect;
                let d = y.diff(alg, j);
                let lower_left = sub(&d, x.cell(j + 1).len()..y.cell(j + 1).len(), 0..nx);
                ok &= lower_left.is_zero();
            }
        }
        ok
    }
}

fn degreewise<F: Scalar>(
    x: &ProjComplex<F>,
    new: &ProjComplex<F>,
    maps: &BTreeMap<i64, HomMatrix<F>>,
    alg: &Algebra<F>,
    forward: bool,
) -> ChainMap<F> {
    let (s, t) = if forward { (x, new) } else { (new, x) };
    ChainMap::from_fn(s.clone(), t.clone(), |n| {
        maps.get(&n).cloned().unwrap_or_else(|| HomMatrix::identity(alg, x.cell(n)))
    })
}

/// Conjugates `x` by degreewise isomorphisms `changes` (`x^n -> new^n`).
fn transport<F: Scalar>(
    alg: &Algebra<F>,
    x: &ProjComplex<F>,
    cells: &BTreeMap<i64, Vec<usize>>,
    changes: &BTreeMap<i64, (HomMatrix<F>, HomMatrix<F>)>,
    lo: i64,
    hi: i64,
) -> ProjComplex<F> {
    let cell = |n: i64| cells.get(&n).cloned().unwrap_or_else(|| x.cell(n).to_vec());
    let fwd = |n: i64| changes.get(&n).map(|c| c.0.clone()).unwrap_or_else(|| HomMatrix::identity(alg, x.cell(n)));
    let back = |n: i64| changes.get(&n).map(|c| c.1.clone()).unwrap_or_else(|| HomMatrix::identity(alg, x.cell(n)));
    let all_cells: Vec<Vec<usize>> = (lo..=hi).map(cell).collect();
    let diffs = (lo..hi).map(|n| fwd(n + 1).mul(alg, &x.diff(alg, n)).mul(alg, &back(n))).collect();
    ProjComplex::new_unchecked(lo, all_cells, diffs)
}

/// Basis changes putting a classified map into block form.
pub fn standard_form<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Result<StandardForm<F>, ShapeError> {
    let class = classify(alg, f)?;
    let (x, y) = (f.source(), f.target());
    let lo = [x, y].iter().filter(|c| !c.is_zero()).map(|c| c.lo()).min().unwrap_or(0);
    let hi = [x, y].iter().filter(|c| !c.is_zero()).map(|c| c.hi()).max().unwrap_or(0);
    let pivot = match &class {
        MorphClass::Smonic => lo - 1,
        MorphClass::Sepic => hi + 1,
        MorphClass::Sirreducible { degree, .. } => *degree,
        MorphClass::Unclassified(_) => return Err(ShapeError::Unclassified),
    };
    let pattern = split_pattern(alg, f);

    let mut x_cells = BTreeMap::new();
    let mut y_cells = BTreeMap::new();
    let mut x_changes = BTreeMap::new();
    let mut y_changes = BTreeMap::new();
    let mut shared = BTreeMap::new();
    let mut complement = BTreeMap::new();
    for j in lo..=hi {
        if j == pivot {
            continue;
        }
        let Some(d) = pattern.degrees.get(&j) else { continue };
        let pick = |s: &Option<Splitting<F>>| s.clone().ok_or(ShapeError::Unclassified);
        if j < pivot {
            let s = pick(&d.epi)?;
            let comp: Vec<usize> = s.complement.iter().map(|&k| x.cell(j)[k]).collect();
            x_cells.insert(j, concat(y.cell(j), &comp));
            shared.insert(j, y.cell(j).len());
            complement.insert(j, comp);
            x_changes.insert(j, (s.change, s.change_inv));
        } else {
            let s = pick(&d.mono)?;
            let comp: Vec<usize> = s.complement.iter().map(|&k| y.cell(j)[k]).collect();
            y_cells.insert(j, concat(x.cell(j), &comp));
            shared.insert(j, x.cell(j).len());
            complement.insert(j, comp);
            y_changes.insert(j, (s.change_inv, s.change));
        }
    }
    let xs = transport(alg, x, &x_cells, &x_changes, lo, hi);
    let ys = transport(alg, y, &y_cells, &y_changes, lo, hi);
    let fwd_x: BTreeMap<i64, HomMatrix<F>> = x_changes.iter().map(|(n, c)| (*n, c.0.clone())).collect();
    let back_x: BTreeMap<i64, HomMatrix<F>> = x_changes.iter().map(|(n, c)| (*n, c.1.clone())).collect();
    let fwd_y: BTreeMap<i64, HomMatrix<F>> = y_changes.iter().map(|(n, c)| (*n, c.0.clone())).collect();
    let back_y: BTreeMap<i64, HomMatrix<F>> = y_changes.iter().map(|(n, c)| (*n, c.1.clone())).collect();
    let source_change = degreewise(x, &xs, &fwd_x, alg, true);
    let source_restore = degreewise(x, &xs, &back_x, alg, false);
    let target_change = degreewise(y, &ys, &fwd_y, alg, true);
    let target_restore = degreewise(y, &ys, &back_y, alg, false);
    let map = ChainMap::from_fn(xs.clone(), ys.clone(), |n| {
        target_change.comp(alg, n).mul(alg, &f.comp(alg, n)).mul(alg, &source_restore.comp(alg, n))
    });

    let mut sf = StandardForm {
        class,
        pivot,
        map,
        source_change,
        source_restore,
        target_change,
        target_restore,
        shared,
        complement,
        e: BTreeMap::new(),
        a: BTreeMap::new(),
        b: BTreeMap::new(),
        c: HomMatrix::zeros(alg, 0, 0),
        ell: HomMatrix::zeros(alg, 0, 0),
    };
    extract_blocks(alg, &mut sf);
    Ok(sf)
}

fn extract_blocks<F: Scalar>(alg: &Algebra<F>, sf: &mut StandardForm<F>) {
    let (x, y) = (sf.source().clone(), sf.target().clone());
    let i = sf.pivot;
    let (lo, hi) = sf.degree_window();
    for j in lo..=hi {
        if j < i - 1 {
            let d = x.diff(alg, j);
            let (ny, ny1) = (sf.shared(j), sf.shared(j + 1));
            sf.b.insert(j, sub(&d, ny1..d.rows(), 0..ny));
            sf.e.insert(j, sub(&d, ny1..d.rows(), ny..d.cols()));
        } else if j == i - 1 {
            let d = x.diff(alg, j);
            let ny = sf.shared(j);
            sf.c = sub(&d, 0..d.rows(), 0..ny);
            sf.e.insert(j, sub(&d, 0..d.rows(), ny..d.cols()));
        } else if j == i {
            let d = y.diff(alg, j);
            let nx1 = sf.shared(j + 1);
            sf.ell = sub(&d, 0..nx1, 0..d.cols());
            sf.e.insert(j, sub(&d, nx1..d.rows(), 0..d.cols()));
        } else {
            let d = y.diff(alg, j);
            let (nx, nx1) = (sf.shared(j), sf.shared(j + 1));
            sf.a.insert(j, sub(&d, 0..nx1, nx..d.cols()));
            sf.e.insert(j, sub(&d, nx1..d.rows(), nx..d.cols()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{a5, elem};
    use complexes::random::random_automorphism;
    use rand::SeedableRng;

    #[test]
    fn already_standard_smonic_has_identity_changes() {
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "beta gamma delta"));
        let y = ProjComplex::new(&alg, -1, vec![vec![0], vec![3]], vec![d]).unwrap();
        let x = ProjComplex::stalk(vec![3], 0);
        let f = ChainMap::from_fn(x, y.clone(), |_| HomMatrix::identity(&alg, &[3]));
        let sf = standard_form(&alg, &f).unwrap();
        assert!(sf.verify(&alg));
        assert_eq!(sf.pivot, -2);
        assert_eq!(sf.target(), &y);
        assert_eq!(sf.target_change, ChainMap::identity(&alg, &y));
        assert_eq!(sf.a(&alg, -1), HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "beta gamma delta")));
    }

    #[test]
    fn scrambled_smonic_recovers_blocks() {
        let alg = a5();
        let d = HomMatrix::from_fn(2, 1, |i, _| if i == 0 { elem(&alg, "beta gamma delta") } else { alg.zero() });
        let y = ProjComplex::new(&alg, -1, vec![vec![0], vec![3, 3]], vec![d]).unwrap();
        let x = ProjComplex::stalk(vec![3], 0);
        let f = ChainMap::from_fn(x, y.clone(), |_| HomMatrix::identity(&alg, &[3]).vstack(&HomMatrix::zeros(&alg, 1, 1)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (y2, there, _) = random_automorphism(&alg, &mut rng, &y);
        let f2 = complexes::compose(&alg, &there, &f).unwrap().with_ends(f.source().clone(), y2);
        let sf = standard_form(&alg, &f2).unwrap();
        assert!(sf.verify(&alg));
        assert_eq!(sf.class.name(), "smonic");
        // ∂ = [[d, a], [0, e]] in the new basis.
        let dy = sf.target().diff(&alg, -1);
        assert_eq!(dy.rows(), 2);
        assert!(sf.e(&alg, -1).rows() == 1);
    }

    #[test]
    fn sirreducible_slice_map_blocks() {
        let alg = a5();
        let dx = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let dy = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "gamma delta"));
        let x = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![dx]).unwrap();
        let y = ProjComplex::new(&alg, -1, vec![vec![0], vec![2]], vec![dy]).unwrap();
        let f = ChainMap::from_fn(x, y, |n| {
            if n == -1 {
                HomMatrix::identity(&alg, &[0])
            } else {
                HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "gamma"))
            }
        });
        let sf = standard_form(&alg, &f).unwrap();
        assert!(sf.verify(&alg));
        assert_eq!(sf.pivot, 0);
        // X^(-1) = Y^(-1) with no complement, so c^(-1) is the differential δ.
        assert_eq!(sf.complement(-1).len(), 0);
        assert_eq!(sf.c, HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta")));
        assert_eq!((sf.ell.rows(), sf.ell.cols()), (0, 1));
    }
}

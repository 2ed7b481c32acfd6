use std::collections::{BTreeMap, HashMap};

use exact_linalg::{Matrix, Scalar, Span};
use path_algebra::Algebra;

use crate::{ChainMap, HomMatrix, Homotopy, ProjComplex};

#[derive(Clone, Debug)]
struct Slot {
    degree: i64,
    row: usize,
    col: usize,
    basis: usize,
}

/// Coordinates for degreewise maps `X^n -> Y^(n+shift)`: one per
/// (degree, row, column, path basis element).
#[derive(Clone, Debug)]
pub struct MapSpace {
    shift: i64,
    slots: Vec<Slot>,
    index: HashMap<(i64, usize, usize, usize), usize>,
}

impl MapSpace {
    pub fn new<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, shift: i64) -> Self {
        let mut slots = Vec::new();
        let mut index = HashMap::new();
        for n in x.degrees() {
            let (src, dst) = (x.cell(n), y.cell(n + shift));
            for (row, &rv) in dst.iter().enumerate() {
                for (col, &cv) in src.iter().enumerate() {
                    for &basis in alg.hom_proj(cv, rv) {
                        index.insert((n, row, col, basis), slots.len());
                        slots.push(Slot {
                            degree: n,
                            row,
                            col,
                            basis,
                        });
                    }
                }
            }
        }
        MapSpace { shift, slots, index }
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn vectorize<F: Scalar>(&self, comps: &BTreeMap<i64, HomMatrix<F>>) -> Vec<F> {
        self.slots
            .iter()
            .map(|s| match comps.get(&s.degree) {
                Some(m) if s.row < m.rows() && s.col < m.cols() => m.get(s.row, s.col)[s.basis].clone(),
                _ => F::zero(),
            })
            .collect()
    }

    pub fn assemble<F: Scalar>(
        &self,
        alg: &Algebra<F>,
        x: &ProjComplex<F>,
        y: &ProjComplex<F>,
        v: &[F],
    ) -> BTreeMap<i64, HomMatrix<F>> {
        let mut comps: BTreeMap<i64, HomMatrix<F>> = BTreeMap::new();
        for n in x.degrees() {
            let (r, c) = (y.cell(n + self.shift).len(), x.cell(n).len());
            if r > 0 && c > 0 {
                comps.insert(n, HomMatrix::zeros(alg, r, c));
            }
        }
        for (s, val) in self.slots.iter().zip(v) {
            if !val.is_zero() {
                let m = comps.get_mut(&s.degree).expect("slot degree");
                m.get_mut(s.row, s.col)[s.basis] = val.clone();
            }
        }
        comps
    }

    /// Matrix of `s ↦ ∂s + sign·sd` from this space to the space of shift + 1.
    fn differential<F: Scalar>(
        &self,
        alg: &Algebra<F>,
        x: &ProjComplex<F>,
        y: &ProjComplex<F>,
        target: &MapSpace,
        sign: &F,
    ) -> Matrix<F> {
        let mut m: Matrix<F> = Matrix::zeros(target.dim(), self.dim());
        let k = self.shift;
        for (j, s) in self.slots.iter().enumerate() {
            let e = alg.basis_elem(s.basis);
            if let Some(dy) = y.diff_ref(s.degree + k) {
                for r2 in 0..dy.rows() {
                    let a = dy.get(r2, s.row);
                    if alg.is_zero(a) {
                        continue;
                    }
                    let p = alg.mul(a, &e);
                    for (b, c) in p.iter().enumerate() {
                        if !c.is_zero() {
                            let i = target.index[&(s.degree, r2, s.col, b)];
                            m[(i, j)] = m[(i, j)].add_ref(c);
                        }
                    }
                }
            }
            if let Some(dx) = x.diff_ref(s.degree - 1) {
                for c2 in 0..dx.cols() {
                    let a = dx.get(s.col, c2);
                    if alg.is_zero(a) {
                        continue;
                    }
                    let p = alg.mul(&e, a);
                    for (b, c) in p.iter().enumerate() {
                        if !c.is_zero() {
                            let i = target.index[&(s.degree - 1, s.row, c2, b)];
                            m[(i, j)].add_mul(sign, c);
                        }
                    }
                }
            }
        }
        m
    }
}

/// `Hom` in the homotopy category.
#[derive(Clone)]
pub struct HomK<F> {
    pub dim: usize,
    /// A basis of all chain maps.
    pub chain_basis: Vec<ChainMap<F>>,
    /// A basis of the null-homotopic maps.
    pub null_basis: Vec<ChainMap<F>>,
    /// Chain maps whose classes form a basis of the quotient.
    pub basis: Vec<ChainMap<F>>,
    space: MapSpace,
    span: Span<F>,
    source: ProjComplex<F>,
    target: ProjComplex<F>,
}

impl<F: Scalar> HomK<F> {
    pub fn source(&self) -> &ProjComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex<F> {
        &self.target
    }

    /// Coordinates of the class of `f` in [`HomK::basis`].
    pub fn coordinates(&self, f: &ChainMap<F>) -> Option<Vec<F>> {
        let v = self.space.vectorize(f.comps());
        let all = self.span.coordinates(&v)?;
        Some(all[all.len() - self.dim..].to_vec())
    }

    pub fn is_null(&self, f: &ChainMap<F>) -> bool {
        self.coordinates(f).is_some_and(|c| c.iter().all(|x| x.is_zero()))
    }

    /// `Σ c_i basis_i`.
    pub fn combine(&self, alg: &Algebra<F>, coords: &[F]) -> ChainMap<F> {
        let mut v = vec![F::zero(); self.space.dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(self.space.vectorize(b.comps())) {
                x.add_mul(c, &y);
            }
        }
        let comps = self.space.assemble(alg, &self.source, &self.target, &v);
        ChainMap::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }
}

fn maps_from_columns<F: Scalar>(
    alg: &Algebra<F>,
    space: &MapSpace,
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
    m: &Matrix<F>,
) -> Vec<ChainMap<F>> {
    (0..m.cols())
        .map(|j| ChainMap::new_unchecked(x.clone(), y.clone(), space.assemble(alg, x, y, &m.column(j))))
        .collect()
}

pub fn hom_k<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> HomK<F> {
    let maps = MapSpace::new(alg, x, y, 0);
    let up = MapSpace::new(alg, x, y, 1);
    let homotopies = MapSpace::new(alg, x, y, -1);
    let chain_op = maps.differential(alg, x, y, &up, &-F::one());
    let null_op = homotopies.differential(alg, x, y, &maps, &F::one());
    let cycles = chain_op.kernel();
    let boundaries = Span::from_columns(&null_op);
    let b = boundaries.basis().clone();
    let joined = b.hstack(&cycles);
    let pivots = joined.rref().pivots;
    let chosen: Vec<usize> = pivots.iter().filter(|&&p| p >= b.cols()).map(|&p| p - b.cols()).collect();
    let reps = cycles.select_columns(&chosen);
    let span = Span::from_independent(b.hstack(&reps));
    HomK {
        dim: chosen.len(),
        chain_basis: maps_from_columns(alg, &maps, x, y, &cycles),
        null_basis: maps_from_columns(alg, &maps, x, y, &b),
        basis: maps_from_columns(alg, &maps, x, y, &reps),
        space: maps,
        span,
        source: x.clone(),
        target: y.clone(),
    }
}

/// Some `s` with `f - g = ∂s + sd`.
pub fn homotopic<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>, g: &ChainMap<F>) -> Option<Homotopy<F>> {
    let (x, y) = (f.source(), f.target());
    let maps = MapSpace::new(alg, x, y, 0);
    let homotopies = MapSpace::new(alg, x, y, -1);
    let null_op = homotopies.differential(alg, x, y, &maps, &F::one());
    let diff = f.sub(alg, &g.with_ends(x.clone(), y.clone()));
    let rhs = Matrix::from_columns(maps.dim(), &[maps.vectorize(diff.comps())]);
    let s = null_op.solve(&rhs).expect("shapes agree")?;
    Some(Homotopy {
        comps: homotopies.assemble(alg, x, y, &s.column(0)),
    })
}

pub fn is_null_homotopic<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Option<Homotopy<F>> {
    homotopic(alg, f, &ChainMap::zero(f.source(), f.target()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{a3, a5, elem};

    #[test]
    fn disjoint_degrees_have_no_maps() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![0], 0);
        let y = ProjComplex::stalk(vec![1], -1);
        assert_eq!(hom_k(&alg, &x, &y).dim, 0);
    }

    #[test]
    fn endomorphisms_of_stalk() {
        let alg = a3();
        let x = ProjComplex::stalk(vec![2], 0);
        let h = hom_k(&alg, &x, &x);
        assert_eq!(h.dim, 1);
        let id = ChainMap::identity(&alg, &x);
        assert_eq!(h.coordinates(&id).unwrap().len(), 1);
    }

    #[test]
    fn null_homotopic_map_detected() {
        // P1 -δ-> P2 in degrees -1, 0; the map to the stalk P2[0]... via
        // identity on P2 is not null, the composite through the cone is.
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let x = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![d]).unwrap();
        let h = hom_k(&alg, &x, &x);
        assert_eq!(h.dim, 1);
        let id = ChainMap::identity(&alg, &x);
        assert!(is_null_homotopic(&alg, &id).is_none());
        let s = homotopic(&alg, &id, &id).unwrap();
        assert!(s.witnesses(&alg, &id, &id));
    }

    #[test]
    fn constructed_boundary_is_homotopic() {
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let y = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![d.clone()]).unwrap();
        let x = ProjComplex::stalk(vec![0], 0);
        let mut s = Homotopy::zero();
        s.comps.insert(0, HomMatrix::identity(&alg, &[0]));
        let f = s.boundary(&alg, &x, &y);
        assert_eq!(f.comp(&alg, 0), d);
        let found = is_null_homotopic(&alg, &f).unwrap();
        assert!(found.witnesses(&alg, &f, &ChainMap::zero(&x, &y)));
        assert_eq!(hom_k(&alg, &x, &y).dim, 0);
    }
}

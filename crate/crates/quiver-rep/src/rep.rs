use std::fmt;

use exact_linalg::{Matrix, Scalar, Span};
use path_algebra::{Algebra, Elem, Path};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::RepError;

impl<F: Scalar> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation").field("dims", &self.dims).field("maps", &self.maps).finish()
    }
}

impl<F: Scalar> fmt::Debug for RepMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.comps).finish()
    }
}

impl<F: Scalar> fmt::Debug for SubRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubRep").field("rep", &self.rep).field("bases", &self.bases).finish()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Representation<F> {
    dims: Vec<usize>,
    ends: Vec<(usize, usize)>,
    maps: Vec<Matrix<F>>,
}

pub(crate) fn arrow_ends<F: Scalar>(alg: &Algebra<F>) -> Vec<(usize, usize)> {
    alg.quiver().arrows().iter().map(|a| (a.source, a.target)).collect()
}

impl<F: Scalar> Representation<F> {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(alg: &Algebra<F>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, RepError> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(RepError::Shape("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(RepError::Shape(format!("arrow `{}`", a.name)));
            }
        }
        let rep = Representation {
            dims,
            ends: arrow_ends(alg),
            maps,
        };
        for (i, r) in alg.relations().iter().enumerate() {
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            let mut acc = Matrix::zeros(rep.dims[t], rep.dims[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&rep.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(RepError::RelationFails(i));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(dims: Vec<usize>, ends: Vec<(usize, usize)>, maps: Vec<Matrix<F>>) -> Self {
        Representation { dims, ends, maps }
    }

    pub fn zero(alg: &Algebra<F>) -> Self {
        let q = alg.quiver();
        Representation {
            dims: vec![0; q.vertex_count()],
            ends: arrow_ends(alg),
            maps: vec![Matrix::zeros(0, 0); q.arrows().len()],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// `(source, target)` of every arrow.
    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    /// Action of a path, `M_target × M_source`.
    pub fn path_matrix(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Right action of `x ∈ e_s Λ e_t`: `M_s -> M_t`.
    pub fn act(&self, alg: &Algebra<F>, x: &Elem<F>, s: usize, t: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dims[t], self.dims[s]);
        for (c, p) in alg.terms(x) {
            if p.source == s && p.target == t {
                m = m.add(&self.path_matrix(&p).scale(&c));
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        Representation {
            dims,
            ends: self.ends.clone(),
            maps,
        }
    }
}

pub(crate) fn block_diag<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
        if i < a.rows() && j < a.cols() {
            a[(i, j)].clone()
        } else if i >= a.rows() && j >= a.cols() {
            b[(i - a.rows(), j - a.cols())].clone()
        } else {
            F::zero()
        }
    })
}

/// Per-vertex linear maps `N_v × M_v`.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMorphism<F> {
    pub comps: Vec<Matrix<F>>,
}

impl<F: Scalar> RepMorphism<F> {
    pub fn new(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>, comps: Vec<Matrix<F>>) -> Result<Self, RepError> {
        let f = RepMorphism { comps };
        f.check(alg, m, n)?;
        Ok(f)
    }

    pub fn check(&self, alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> Result<(), RepError> {
        for (v, c) in self.comps.iter().enumerate() {
            if c.rows() != n.dim(v) || c.cols() != m.dim(v) {
                return Err(RepError::Shape(format!("component at vertex {v}")));
            }
        }
        for (i, a) in alg.quiver().arrows().iter().enumerate() {
            let lhs = n.map(i).mul(&self.comps[a.source]);
            let rhs = self.comps[a.target].mul(m.map(i));
            if lhs != rhs {
                return Err(RepError::NotMorphism(i));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Representation<F>) -> Self {
        RepMorphism {
            comps: m.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero(m: &Representation<F>, n: &Representation<F>) -> Self {
        RepMorphism {
            comps: m.dims().iter().zip(n.dims()).map(|(&a, &b)| Matrix::zeros(b, a)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Self) -> Self {
        RepMorphism {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RepMorphism {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        RepMorphism {
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    pub fn kernel(&self, m: &Representation<F>) -> SubRep<F> {
        SubRep::new(m, self.comps.iter().map(|c| c.kernel()).collect())
    }

    pub fn image(&self, n: &Representation<F>) -> SubRep<F> {
        SubRep::new(n, self.comps.iter().map(|c| Span::from_columns(c).basis().clone()).collect())
    }
}

/// A subrepresentation given by a column basis at each vertex.
#[derive(Clone)]
pub struct SubRep<F> {
    pub rep: Representation<F>,
    /// Inclusion into the ambient module.
    pub bases: Vec<Matrix<F>>,
}

impl<F: Scalar> SubRep<F> {
    /// `bases[v]` must have independent columns spanning a subrepresentation.
    pub fn new(ambient: &Representation<F>, bases: Vec<Matrix<F>>) -> Self {
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let spans: Vec<Span<F>> = bases.iter().map(|b| Span::from_independent(b.clone())).collect();
        let maps = ambient
            .maps()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (s, t) = ambient.ends()[i];
                let image = a.mul(&bases[s]);
                let cols: Vec<Vec<F>> = image
                    .columns()
                    .iter()
                    .map(|c| spans[t].coordinates(c).expect("subspace closed under arrows"))
                    .collect();
                Matrix::from_columns(dims[t], &cols)
            })
            .collect();
        SubRep {
            rep: Representation::new_unchecked(dims, ambient.ends().to_vec(), maps),
            bases,
        }
    }

    pub fn inclusion(&self) -> RepMorphism<F> {
        RepMorphism {
            comps: self.bases.clone(),
        }
    }

    /// The quotient `ambient / self` with its projection.
    pub fn quotient(&self, ambient: &Representation<F>) -> (Representation<F>, RepMorphism<F>) {
        let mut complements = Vec::new();
        let mut coords = Vec::new();
        for (v, b) in self.bases.iter().enumerate() {
            let n = ambient.dim(v);
            let full = b.hstack(&Matrix::identity(n));
            let pivots = full.rref().pivots;
            let extra: Vec<usize> = pivots.iter().filter(|&&p| p >= b.cols()).map(|&p| p - b.cols()).collect();
            let w = Matrix::identity(n).select_columns(&extra);
            let span = Span::from_independent(b.hstack(&w));
            // Coordinates along w of every standard basis vector.
            let proj = Matrix::from_columns(
                extra.len(),
                &(0..n)
                    .map(|j| {
                        let c = span.coordinates(&Matrix::<F>::identity(n).column(j)).expect("full span");
                        c[b.cols()..].to_vec()
                    })
                    .collect::<Vec<_>>(),
            );
            complements.push(w);
            coords.push(proj);
        }
        let dims: Vec<usize> = complements.iter().map(|w| w.cols()).collect();
        let maps = ambient
            .maps()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (s, t) = ambient.ends()[i];
                coords[t].mul(a).mul(&complements[s])
            })
            .collect();
        (
            Representation::new_unchecked(dims, ambient.ends().to_vec(), maps),
            RepMorphism { comps: coords },
        )
    }
}

/// Basis of `Hom(M, N)`.
pub fn hom_rep<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> Vec<RepMorphism<F>> {
    let nv = alg.vertex_count();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dim(v) * m.dim(v);
    }
    let unknowns = offsets[nv];
    let var = |v: usize, i: usize, j: usize| offsets[v] + i * m.dim(v) + j;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (k, a) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (m.map(k), n.map(k));
        // (N_a φ_s - φ_t M_a)[i][j] = 0 for i < N_t, j < M_s.
        for i in 0..n.dim(t) {
            for j in 0..m.dim(s) {
                let mut row = vec![F::zero(); unknowns];
                for l in 0..n.dim(s) {
                    let c = &na[(i, l)];
                    if !c.is_zero() {
                        row[var(s, l, j)] = row[var(s, l, j)].add_ref(c);
                    }
                }
                for l in 0..m.dim(t) {
                    let c = &ma[(l, j)];
                    if !c.is_zero() {
                        row[var(t, i, l)] = row[var(t, i, l)].sub_ref(c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows)
    };
    let k = sys.kernel();
    (0..k.cols())
        .map(|c| RepMorphism {
            comps: (0..nv)
                .map(|v| Matrix::from_fn(n.dim(v), m.dim(v), |i, j| k[(var(v, i, j), c)].clone()))
                .collect(),
        })
        .collect()
}

/// `(top multiplicities, rad M)`.
pub fn top_and_radical<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Vec<usize>, SubRep<F>) {
    let nv = alg.vertex_count();
    let mut bases = Vec::with_capacity(nv);
    for t in 0..nv {
        let mut cols = Matrix::zeros(m.dim(t), 0);
        for (k, a) in alg.quiver().arrows().iter().enumerate() {
            if a.target == t {
                cols = cols.hstack(m.map(k));
            }
        }
        bases.push(Span::from_columns(&cols).basis().clone());
    }
    let top = (0..nv).map(|v| m.dim(v) - bases[v].cols()).collect();
    (top, SubRep::new(m, bases))
}

/// An isomorphism `M -> N`, searched among seeded random combinations of a
/// Hom basis.
pub fn find_isomorphism<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>) -> Option<RepMorphism<F>> {
    if m.dims() != n.dims() {
        return None;
    }
    let basis = hom_rep(alg, m, n);
    if basis.is_empty() {
        return m.is_zero().then(|| RepMorphism::zero(m, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..24 {
        let mut f = RepMorphism::zero(m, n);
        for (i, b) in basis.iter().enumerate() {
            let c = if attempt == 0 {
                F::from_i64(i as i64 + 1)
            } else {
                F::from_i64(rng.gen_range(-9..=9))
            };
            f = f.add(&b.scale(&c));
        }
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

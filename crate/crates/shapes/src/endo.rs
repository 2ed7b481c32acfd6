use complexes::{compose, hom_k, minimize, ChainMap, HomK, HomMatrix, MapSpace, ProjComplex};
use exact_linalg::{Matrix, Poly, Scalar};
use path_algebra::Algebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_CANDIDATES: usize = 24;
const SCHEDULE_SEED: u64 = 0x5eed_0f_e1d;

/// `End_K(X)` with structure constants: `left[i]` is left multiplication by
/// the i-th basis class, in basis coordinates.
#[derive(Clone)]
pub struct EndAlgebra<F> {
    pub hom: HomK<F>,
    pub left: Vec<Matrix<F>>,
    pub unit: Vec<F>,
}

impl<F: Scalar> EndAlgebra<F> {
    pub fn new(alg: &Algebra<F>, x: &ProjComplex<F>) -> Self {
        let hom = hom_k(alg, x, x);
        let n = hom.dim;
        let left = (0..n)
            .map(|i| {
                let cols: Vec<Vec<F>> = (0..n)
                    .map(|j| {
                        let p = compose(alg, &hom.basis[i], &hom.basis[j]).expect("endomorphisms");
                        hom.coordinates(&p).expect("closed under composition")
                    })
                    .collect();
                Matrix::from_columns(n, &cols)
            })
            .collect();
        let unit = hom.coordinates(&ChainMap::identity(alg, x)).expect("identity is a chain map");
        EndAlgebra { hom, left, unit }
    }

    pub fn dim(&self) -> usize {
        self.hom.dim
    }

    pub fn left_mul(&self, a: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (c, l) in a.iter().zip(&self.left) {
            if !c.is_zero() {
                m = m.add(&l.scale(c));
            }
        }
        m
    }

    /// Kernel of the trace form `tr(L_i L_j)`, as basis columns.
    pub fn radical(&self) -> Matrix<F> {
        let n = self.dim();
        let t = Matrix::from_fn(n, n, |i, j| {
            let p = self.left[i].mul(&self.left[j]);
            (0..n).fold(F::zero(), |acc, k| acc.add_ref(&p[(k, k)]))
        });
        t.kernel()
    }

    /// Every radical basis element acts nilpotently.
    pub fn radical_is_nil(&self) -> bool {
        let n = self.dim();
        let r = self.radical();
        (0..r.cols()).all(|j| {
            let l = self.left_mul(&r.column(j));
            let mut p = Matrix::identity(n);
            for _ in 0..n {
                p = p.mul(&l);
            }
            p.is_zero()
        })
    }
}

#[derive(Clone, Debug)]
pub enum Indecomposability<F> {
    /// `certain` when `End/rad` is one-dimensional; otherwise the splitter
    /// search came up empty.
    Indecomposable { certain: bool },
    /// An idempotent chain endomorphism of the minimal model, neither 0 nor 1.
    Decomposable { idempotent: ChainMap<F> },
    Zero,
}

impl<F> Indecomposability<F> {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable { .. })
    }
}

fn vectorize<F: Scalar>(space: &MapSpace, f: &ChainMap<F>) -> Vec<F> {
    space.vectorize(f.comps())
}

fn combine<F: Scalar>(alg: &Algebra<F>, maps: &[ChainMap<F>], coeffs: &[F], x: &ProjComplex<F>) -> ChainMap<F> {
    let mut acc = ChainMap::zero(x, x);
    for (c, m) in coeffs.iter().zip(maps) {
        if !c.is_zero() {
            acc = acc.add(alg, &m.scale(c));
        }
    }
    acc
}

/// Minimal polynomial of a chain endomorphism and its powers up to the degree.
fn min_poly<F: Scalar>(alg: &Algebra<F>, space: &MapSpace, phi: &ChainMap<F>) -> (Poly<F>, Vec<ChainMap<F>>) {
    let x = phi.source();
    let mut powers = vec![ChainMap::identity(alg, x)];
    let mut vecs = vec![vectorize(space, &powers[0])];
    loop {
        let next = compose(alg, phi, powers.last().expect("nonempty")).expect("endomorphism");
        let v = vectorize(space, &next);
        let a = Matrix::from_columns(space.dim(), &vecs);
        let b = Matrix::from_columns(space.dim(), &[v.clone()]);
        if let Some(sol) = a.solve(&b).expect("shapes agree") {
            let mut c: Vec<F> = sol.column(0).into_iter().map(|s| -s).collect();
            c.push(F::one());
            return (Poly::new(c), powers);
        }
        powers.push(next);
        vecs.push(v);
    }
}

fn eval_at<F: Scalar>(alg: &Algebra<F>, p: &Poly<F>, powers: &[ChainMap<F>], x: &ProjComplex<F>) -> ChainMap<F> {
    let mut acc = ChainMap::zero(x, x);
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let pk = if k < powers.len() {
            powers[k].clone()
        } else {
            let mut m = powers[powers.len() - 1].clone();
            for _ in powers.len()..=k {
                m = compose(alg, &powers[1], &m).expect("endomorphism");
            }
            m
        };
        acc = acc.add(alg, &pk.scale(c));
    }
    acc
}

/// A nontrivial idempotent polynomial in `phi`, if its minimal polynomial has
/// a root splitting off a coprime factor.
fn idempotent_from<F: Scalar>(alg: &Algebra<F>, space: &MapSpace, phi: &ChainMap<F>) -> Option<ChainMap<F>> {
    let x = phi.source();
    let (mu, _) = min_poly(alg, space, phi);
    for lambda in mu.roots() {
        let psi = phi.sub(alg, &ChainMap::identity(alg, x).scale(&lambda));
        let (m, q) = mu.shifted(&lambda).split_at_zero();
        if m == 0 || q.degree() == Some(0) {
            continue;
        }
        let tm = Poly::monomial(m);
        let (_, a, _) = Poly::ext_gcd(&tm, &q);
        let e_poly = a.mul(&tm);
        let (_, powers) = min_poly(alg, space, &psi);
        let mut pw = powers;
        if pw.len() < 2 {
            pw.push(psi.clone());
        }
        return Some(eval_at(alg, &e_poly, &pw, x));
    }
    None
}

/// Candidates in schedule order: basis, pairwise products, then seeded
/// pseudorandom combinations.
fn candidates<F: Scalar>(alg: &Algebra<F>, basis: &[ChainMap<F>], x: &ProjComplex<F>) -> Vec<ChainMap<F>> {
    let mut out: Vec<ChainMap<F>> = basis.to_vec();
    for a in basis {
        for b in basis {
            out.push(compose(alg, a, b).expect("endomorphisms"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SCHEDULE_SEED);
    for _ in 0..RANDOM_CANDIDATES {
        let coeffs: Vec<F> = basis.iter().map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
        out.push(combine(alg, basis, &coeffs, x));
    }
    out
}

fn find_idempotent<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, basis: &[ChainMap<F>]) -> Option<ChainMap<F>> {
    let space = MapSpace::new(alg, x, x, 0);
    candidates(alg, basis, x)
        .iter()
        .find_map(|phi| idempotent_from(alg, &space, phi))
}

/// Decides indecomposability of `x` in the homotopy category.
pub fn indecomposability<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> Indecomposability<F> {
    let x = minimize(alg, x).complex;
    if x.is_zero() {
        return Indecomposability::Zero;
    }
    let end = EndAlgebra::new(alg, &x);
    let semisimple_dim = end.dim() - end.radical().cols();
    if semisimple_dim == 1 && end.radical_is_nil() {
        return Indecomposability::Indecomposable { certain: true };
    }
    match find_idempotent(alg, &x, &end.hom.basis) {
        Some(idempotent) => Indecomposability::Decomposable { idempotent },
        None => Indecomposability::Indecomposable { certain: false },
    }
}

pub fn is_indecomposable_k<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> bool {
    indecomposability(alg, x).is_indecomposable()
}

/// A direct summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand<F> {
    pub complex: ProjComplex<F>,
    pub inclusion: ChainMap<F>,
    pub projection: ChainMap<F>,
}

/// Splits a minimal complex along a chain idempotent.
fn split_along<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, e: &ChainMap<F>) -> [Summand<F>; 2] {
    let mut parts: [(Vec<Vec<usize>>, Vec<HomMatrix<F>>, Vec<HomMatrix<F>>); 2] = Default::default();
    let (lo, hi) = (x.lo(), x.hi());
    for n in lo..=hi {
        let cells = x.cell(n);
        let en = e.comp(alg, n);
        let fn_ = HomMatrix::identity(alg, cells).sub(&en);
        let j = en.scalar_part(alg, cells, cells).rref().pivots;
        let k = fn_.scalar_part(alg, cells, cells).rref().pivots;
        let m = en.select_cols(&j).hstack(&fn_.select_cols(&k));
        let new_cells: Vec<usize> = j.iter().chain(&k).map(|&i| cells[i]).collect();
        let inv = m.inverse(alg, cells, &new_cells).expect("idempotent splits");
        let jn = j.len();
        parts[0].0.push(j.iter().map(|&i| cells[i]).collect());
        parts[0].1.push(en.select_cols(&j));
        parts[0].2.push(inv.row_range(0, jn));
        parts[1].0.push(k.iter().map(|&i| cells[i]).collect());
        parts[1].1.push(fn_.select_cols(&k));
        parts[1].2.push(inv.row_range(jn, new_cells.len()));
    }
    parts.map(|(cells, incl, proj)| {
        let diffs: Vec<HomMatrix<F>> = (lo..hi)
            .map(|n| {
                let k = (n - lo) as usize;
                proj[k + 1].mul(alg, &x.diff(alg, n)).mul(alg, &incl[k])
            })
            .collect();
        let full = ProjComplex::new_unchecked(lo, cells.clone(), diffs.clone());
        let comp = |v: &[HomMatrix<F>]| {
            (lo..=hi)
                .zip(v)
                .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
                .map(|(n, m)| (n, m.clone()))
                .collect()
        };
        Summand {
            inclusion: ChainMap::new_unchecked(full.clone(), x.clone(), comp(&incl)),
            projection: ChainMap::new_unchecked(x.clone(), full.clone(), comp(&proj)),
            complex: full,
        }
    })
}

/// Splits a minimal complex into summands on which no splitting element is
/// found, each with its inclusion and projection.
pub fn decompose<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> Vec<Summand<F>> {
    if x.is_zero() {
        return Vec::new();
    }
    let hom = hom_k(alg, x, x);
    let Some(e) = find_idempotent(alg, x, &hom.basis) else {
        return vec![Summand {
            complex: x.clone(),
            inclusion: ChainMap::identity(alg, x),
            projection: ChainMap::identity(alg, x),
        }];
    };
    let mut out = Vec::new();
    for part in split_along(alg, x, &e) {
        for inner in decompose(alg, &part.complex) {
            out.push(Summand {
                inclusion: compose(alg, &part.inclusion, &inner.inclusion).expect("ends agree"),
                projection: compose(alg, &inner.projection, &part.projection).expect("ends agree"),
                complex: inner.complex,
            });
        }
    }
    out
}

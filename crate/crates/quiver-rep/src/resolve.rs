use std::collections::BTreeMap;

use complexes::{minimize, ChainMap, HomMatrix, ProjComplex};
use exact_linalg::{Matrix, Scalar};
use path_algebra::Algebra;

use crate::modules::{
    column_to_vector, generator_map, generator_vector, hom_matrix_morphism, injective, nakayama_morphism,
    projective, relative_top, vector_to_column,
};
use crate::{RepError, RepMorphism, Representation};

pub const DEFAULT_MAX_RES: usize = 64;

impl<F: Scalar> std::fmt::Debug for Resolution<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Resolution").field("complex", &self.complex).finish_non_exhaustive()
    }
}

/// A bounded complex of modules; `terms[k]` sits in degree `lo + k`.
#[derive(Clone)]
pub struct ModComplex<F> {
    lo: i64,
    terms: Vec<Representation<F>>,
    diffs: Vec<RepMorphism<F>>,
}

impl<F: Scalar> ModComplex<F> {
    pub fn new(
        alg: &Algebra<F>,
        lo: i64,
        terms: Vec<Representation<F>>,
        diffs: Vec<RepMorphism<F>>,
    ) -> Result<Self, RepError> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(RepError::Shape("need one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            d.check(alg, &terms[k], &terms[k + 1])?;
            if k > 0 && !d.after(&diffs[k - 1]).is_zero() {
                return Err(RepError::Shape(format!("d∘d ≠ 0 at degree {}", lo + k as i64 - 1)));
            }
        }
        Ok(ModComplex { lo, terms, diffs })
    }

    pub fn stalk(m: Representation<F>, degree: i64) -> Self {
        ModComplex {
            lo: degree,
            terms: vec![m],
            diffs: Vec::new(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, alg: &Algebra<F>, n: i64) -> Representation<F> {
        if n < self.lo || n > self.hi() {
            Representation::zero(alg)
        } else {
            self.terms[(n - self.lo) as usize].clone()
        }
    }

    /// `d^n`, zero outside the support.
    pub fn diff(&self, alg: &Algebra<F>, n: i64) -> RepMorphism<F> {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            RepMorphism::zero(&self.term(alg, n), &self.term(alg, n + 1))
        }
    }
}

/// A complex of projectives with a quasi-isomorphism to a complex of modules,
/// given degreewise on the underlying modules.
#[derive(Clone)]
pub struct Resolution<F> {
    pub complex: ProjComplex<F>,
    pub comparison: BTreeMap<i64, RepMorphism<F>>,
}

impl<F: Scalar> Resolution<F> {
    /// The degree-0 map `P^0 -> M`.
    pub fn augmentation(&self, alg: &Algebra<F>, m: &Representation<F>) -> RepMorphism<F> {
        self.comparison
            .get(&0)
            .cloned()
            .unwrap_or_else(|| RepMorphism::zero(&projective(alg, self.complex.cell(0)), m))
    }
}

fn hstack_all<F: Scalar>(rows: usize, parts: &[&Matrix<F>]) -> Matrix<F> {
    parts.iter().fold(Matrix::zeros(rows, 0), |acc, p| acc.hstack(p))
}

/// Builds `P -> C` degree by degree from the top so that the cone is acyclic,
/// each `P^n` a projective cover of the cycles of the partial cone modulo
/// boundaries from `C`. The result is minimized.
pub fn resolve_complex<F: Scalar>(
    alg: &Algebra<F>,
    c: &ModComplex<F>,
    max_len: usize,
) -> Result<Resolution<F>, RepError> {
    resolve_inner(alg, c, max_len, false)
}

/// The last two terms of a minimal projective resolution of `M`.
pub fn presentation<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> Resolution<F> {
    resolve_inner(alg, &ModComplex::stalk(m.clone(), 0), 1, true).expect("truncated resolution")
}

fn resolve_inner<F: Scalar>(
    alg: &Algebra<F>,
    c: &ModComplex<F>,
    max_len: usize,
    truncate: bool,
) -> Result<Resolution<F>, RepError> {
    let nv = alg.vertex_count();
    let mut cells: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, HomMatrix<F>> = BTreeMap::new();
    let mut comparison: BTreeMap<i64, RepMorphism<F>> = BTreeMap::new();
    let empty: Vec<usize> = Vec::new();
    let mut n = c.hi();
    loop {
        if c.lo() - n > max_len as i64 {
            if truncate {
                break;
            }
            return Err(RepError::ResolutionTooLong(max_len));
        }
        let up = cells.get(&(n + 1)).unwrap_or(&empty).clone();
        let up2 = cells.get(&(n + 2)).unwrap_or(&empty).clone();
        let p_up = projective(alg, &up);
        let p_up2 = projective(alg, &up2);
        let cn = c.term(alg, n);
        let cn1 = c.term(alg, n + 1);
        let cone = p_up.direct_sum(&cn);
        let d_up = hom_matrix_morphism(
            alg,
            &diffs.get(&(n + 1)).cloned().unwrap_or_else(|| HomMatrix::zeros(alg, up2.len(), up.len())),
            &up,
            &up2,
        );
        let pi_up = comparison.get(&(n + 1)).cloned().unwrap_or_else(|| RepMorphism::zero(&p_up, &cn1));
        let dc = c.diff(alg, n);
        let dc_in = c.diff(alg, n - 1);
        let mut cycles = Vec::with_capacity(nv);
        let mut bounds = Vec::with_capacity(nv);
        for t in 0..nv {
            let top = hstack_all(p_up2.dim(t), &[&d_up.comps[t].neg(), &Matrix::zeros(p_up2.dim(t), cn.dim(t))]);
            let bottom = hstack_all(cn1.dim(t), &[&pi_up.comps[t], &dc.comps[t]]);
            cycles.push(top.vstack(&bottom).kernel());
            bounds.push(Matrix::zeros(p_up.dim(t), dc_in.comps[t].cols()).vstack(&dc_in.comps[t]));
        }
        let gens = relative_top(&cone, &cycles, &bounds);
        if n < c.lo() && gens.is_empty() {
            break;
        }
        let new_cells: Vec<usize> = gens.iter().map(|g| g.0).collect();
        let columns: Vec<Vec<_>> = gens
            .iter()
            .map(|(v, z)| {
                let split = p_up.dim(*v);
                let p: Vec<F> = z[..split].iter().map(|x| -x.clone()).collect();
                vector_to_column(alg, &up, *v, &p)
            })
            .collect();
        let d = HomMatrix::from_fn(up.len(), new_cells.len(), |r, k| columns[k][r].clone());
        let images: Vec<Vec<F>> = gens.iter().map(|(v, z)| z[p_up.dim(*v)..].to_vec()).collect();
        comparison.insert(n, generator_map(alg, &new_cells, &cn, &images));
        diffs.insert(n, d);
        cells.insert(n, new_cells);
        n -= 1;
    }
    let (lo, hi) = (n + 1, c.hi());
    let complex = ProjComplex::new_unchecked(
        lo,
        (lo..=hi).map(|k| cells[&k].clone()).collect(),
        (lo..hi).map(|k| diffs[&k].clone()).collect(),
    );
    let comparison_at = |k: i64| comparison.get(&k).cloned();
    if complex.is_minimal(alg) {
        let comparison = (complex.lo()..=complex.hi())
            .filter_map(|k| comparison_at(k).map(|m| (k, m)))
            .collect();
        return Ok(Resolution { complex, comparison });
    }
    let m = minimize(alg, &complex);
    let mut adjusted = BTreeMap::new();
    for k in m.complex.degrees() {
        if let Some(pi) = comparison_at(k) {
            let psi = hom_matrix_morphism(alg, &m.psi.comp(alg, k), m.complex.cell(k), complex.cell(k));
            adjusted.insert(k, pi.after(&psi));
        }
    }
    Ok(Resolution {
        complex: m.complex,
        comparison: adjusted,
    })
}

/// Minimal projective resolution of `M`, concentrated in degrees `≤ 0`.
pub fn min_proj_resolution<F: Scalar>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    max_len: usize,
) -> Result<Resolution<F>, RepError> {
    resolve_complex(alg, &ModComplex::stalk(m.clone(), 0), max_len)
}

/// `νX` replaced by a quasi-isomorphic minimal complex of projectives.
pub fn nakayama_complex<F: Scalar>(
    alg: &Algebra<F>,
    x: &ProjComplex<F>,
    max_len: usize,
) -> Result<ProjComplex<F>, RepError> {
    if x.is_zero() {
        return Ok(ProjComplex::zero());
    }
    let terms = x.degrees().map(|n| injective(alg, x.cell(n))).collect();
    let diffs = (x.lo()..x.hi())
        .map(|n| nakayama_morphism(alg, &x.diff(alg, n), x.cell(n), x.cell(n + 1)))
        .collect();
    let c = ModComplex {
        lo: x.lo(),
        terms,
        diffs,
    };
    Ok(resolve_complex(alg, &c, max_len)?.complex)
}

fn solve_vec<F: Scalar>(m: &Matrix<F>, y: &[F]) -> Option<Vec<F>> {
    let b = Matrix::from_columns(m.rows(), &[y.to_vec()]);
    m.solve(&b).ok().flatten().map(|x| x.column(0))
}

/// Comparison-theorem lift of `f: M -> N` to the resolutions.
pub fn lift_map<F: Scalar>(
    alg: &Algebra<F>,
    src: &Resolution<F>,
    m: &Representation<F>,
    tgt: &Resolution<F>,
    n: &Representation<F>,
    f: &RepMorphism<F>,
) -> Result<ChainMap<F>, RepError> {
    let (x, y) = (&src.complex, &tgt.complex);
    let mut comps = BTreeMap::new();
    let src_aug = src.augmentation(alg, m);
    let tgt_aug = tgt.augmentation(alg, n);
    let mut deg = 0;
    while deg >= x.lo() && !x.is_zero() {
        let (sc, tc) = (x.cell(deg), y.cell(deg));
        let mut columns = Vec::with_capacity(sc.len());
        for (k, &v) in sc.iter().enumerate() {
            let gen = generator_vector(alg, sc, k);
            let (image, map) = if deg == 0 {
                (f.comps[v].mul_vec(&src_aug.comps[v].mul_vec(&gen)), tgt_aug.comps[v].clone())
            } else {
                let prev: &HomMatrix<F> = &comps[&(deg + 1)];
                let through = prev.mul(alg, &x.diff(alg, deg));
                let col: Vec<_> = (0..through.rows()).map(|r| through.get(r, k).clone()).collect();
                let image = column_to_vector(alg, y.cell(deg + 1), v, &col);
                let dy = hom_matrix_morphism(alg, &y.diff(alg, deg), tc, y.cell(deg + 1));
                (image, dy.comps[v].clone())
            };
            let pre = solve_vec(&map, &image).ok_or(RepError::NoLift(deg))?;
            columns.push(vector_to_column(alg, tc, v, &pre));
        }
        comps.insert(deg, HomMatrix::from_fn(tc.len(), sc.len(), |r, k| columns[k][r].clone()));
        deg -= 1;
    }
    Ok(ChainMap::new_unchecked(x.clone(), y.clone(), comps))
}

/// `(⊕ P_cells)` at every vertex as a representation of the differential.
fn vertex_diff<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, n: i64) -> RepMorphism<F> {
    hom_matrix_morphism(alg, &x.diff(alg, n), x.cell(n), x.cell(n + 1))
}

/// Dimension vectors of the nonzero cohomology modules.
pub fn homology_dims<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> BTreeMap<i64, Vec<usize>> {
    let nv = alg.vertex_count();
    let mut out = BTreeMap::new();
    for n in x.degrees() {
        let d_out = vertex_diff(alg, x, n);
        let d_in = vertex_diff(alg, x, n - 1);
        let dims: Vec<usize> = (0..nv)
            .map(|t| {
                let total = d_out.comps[t].cols();
                total - d_out.comps[t].rank() - d_in.comps[t].rank()
            })
            .collect();
        if dims.iter().any(|&d| d > 0) {
            out.insert(n, dims);
        }
    }
    out
}

/// Whether `X` is a projective resolution of a module: concentrated in
/// degrees `≤ 0` with cohomology only in degree 0.
pub fn is_module_resolution<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> bool {
    x.is_zero() || (x.hi() <= 0 && homology_dims(alg, x).keys().all(|&n| n == 0))
}

/// `H^0` of a complex of projectives, as the cokernel of `d^(-1)`.
pub fn zeroth_homology<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> Representation<F> {
    let p0 = projective(alg, x.cell(0));
    let into = vertex_diff(alg, x, -1);
    let out = vertex_diff(alg, x, 0);
    let cycles = out.kernel(&p0);
    let image = into.image(&p0);
    // H^0 = Z / B, B expressed inside Z.
    let coords: Vec<Matrix<F>> = (0..alg.vertex_count())
        .map(|t| {
            let span = exact_linalg::Span::from_independent(cycles.bases[t].clone());
            let cols: Vec<Vec<F>> = image.bases[t]
                .columns()
                .iter()
                .map(|c| span.coordinates(c).expect("boundaries are cycles"))
                .collect();
            Matrix::from_columns(cycles.bases[t].cols(), &cols)
        })
        .collect();
    let b = crate::SubRep::new(&cycles.rep, coords);
    b.quotient(&cycles.rep).0
}

//! Seeded generators for property tests: small algebras of type `A_n`,
//! minimal complexes, chain maps and automorphisms.

use std::collections::BTreeMap;

use exact_linalg::{Matrix, Scalar};
use path_algebra::{Algebra, Elem, Path, Quiver, Relation};
use rand::Rng;

use crate::{hom_k, ChainMap, HomMatrix, ProjComplex};

/// `A_n` with random orientation and random monomial zero relations.
pub fn random_algebra<F: Scalar, R: Rng>(rng: &mut R, max_vertices: usize) -> Algebra<F> {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let names: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (1..n)
        .map(|k| {
            let (s, t) = if rng.gen_bool(0.5) { (k + 1, k) } else { (k, k + 1) };
            (format!("a{k}"), s.to_string(), t.to_string())
        })
        .collect();
    let q = Quiver::new(&names, &arrows).expect("valid quiver");
    let mut rels = Vec::new();
    for p in paths_of_length_at_least(&q, 2) {
        if rng.gen_bool(0.3) {
            rels.push(Relation::monomial(p));
        }
    }
    Algebra::build(q, rels, 8).expect("monomial relations are admissible")
}

fn paths_of_length_at_least(q: &Quiver, min: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..q.arrows().len()).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for arrows in frontier {
            let p = Path::from_arrows(q, arrows.clone()).expect("composable");
            if p.len() >= min {
                out.push(p.clone());
            }
            for (a, arrow) in q.arrows().iter().enumerate() {
                if arrow.source == p.target {
                    let mut longer = arrows.clone();
                    longer.push(a);
                    next.push(longer);
                }
            }
        }
        frontier = next;
    }
    out
}

fn small<F: Scalar, R: Rng>(rng: &mut R) -> F {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    F::from_i64(c)
}

/// A random element of `e_row Λ e_col`; radical when `radical` is set.
pub fn random_elem<F: Scalar, R: Rng>(alg: &Algebra<F>, rng: &mut R, row: usize, col: usize, radical: bool) -> Elem<F> {
    let mut x = alg.zero();
    for &b in alg.hom_proj(col, row) {
        if radical && alg.basis()[b].is_trivial() {
            continue;
        }
        if rng.gen_bool(0.6) {
            x[b] = small(rng);
        }
    }
    x
}

fn random_radical_matrix<F: Scalar, R: Rng>(alg: &Algebra<F>, rng: &mut R, rows: &[usize], cols: &[usize]) -> HomMatrix<F> {
    HomMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        if rng.gen_bool(0.7) {
            random_elem(alg, rng, rows[i], cols[j], true)
        } else {
            alg.zero()
        }
    })
}

/// A minimal complex with `1..=max_degrees` nonzero degrees starting at `lo`
/// and `1..=max_cells` summands per degree.
pub fn random_minimal_complex<F: Scalar, R: Rng>(
    alg: &Algebra<F>,
    rng: &mut R,
    lo: i64,
    max_degrees: usize,
    max_cells: usize,
) -> ProjComplex<F> {
    let n = alg.vertex_count();
    let len = rng.gen_range(1..=max_degrees.max(1));
    let cells: Vec<Vec<usize>> = (0..len)
        .map(|_| (0..rng.gen_range(1..=max_cells.max(1))).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let mut diffs: Vec<HomMatrix<F>> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let mut chosen = HomMatrix::zeros(alg, cells[k + 1].len(), cells[k].len());
        for _ in 0..20 {
            let d = random_radical_matrix(alg, rng, &cells[k + 1], &cells[k]);
            if diffs.last().map_or(true, |prev| d.mul(alg, prev).is_zero()) {
                chosen = d;
                break;
            }
        }
        diffs.push(chosen);
    }
    ProjComplex::new(alg, lo, cells, diffs).expect("d∘d = 0 by construction")
}

/// A random chain map: a combination of a basis of all chain maps.
pub fn random_chain_map<F: Scalar, R: Rng>(
    alg: &Algebra<F>,
    rng: &mut R,
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
) -> ChainMap<F> {
    let h = hom_k(alg, x, y);
    let mut f = ChainMap::zero(x, y);
    for b in &h.chain_basis {
        if rng.gen_bool(0.7) {
            f = f.add(alg, &b.scale(&small(rng)));
        }
    }
    f
}

/// An invertible map `⊕ P_cells -> ⊕ P_cells`.
pub fn random_invertible<F: Scalar, R: Rng>(alg: &Algebra<F>, rng: &mut R, cells: &[usize]) -> HomMatrix<F> {
    loop {
        let scalar = Matrix::from_fn(cells.len(), cells.len(), |i, j| {
            if cells[i] == cells[j] && rng.gen_bool(0.7) {
                small(rng)
            } else {
                F::zero()
            }
        });
        if scalar.inverse().is_none() {
            continue;
        }
        let m = HomMatrix::from_scalar(alg, &scalar, cells, cells).add(&random_radical_matrix(alg, rng, cells, cells));
        if m.inverse(alg, cells, cells).is_some() {
            return m;
        }
    }
}

/// `x` transported along random degreewise isomorphisms: the new complex and
/// the isomorphism `x -> new` with its inverse.
pub fn random_automorphism<F: Scalar, R: Rng>(
    alg: &Algebra<F>,
    rng: &mut R,
    x: &ProjComplex<F>,
) -> (ProjComplex<F>, ChainMap<F>, ChainMap<F>) {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    for n in x.degrees() {
        let m = random_invertible(alg, rng, x.cell(n));
        back.insert(n, m.inverse(alg, x.cell(n), x.cell(n)).expect("invertible"));
        fwd.insert(n, m);
    }
    if x.is_zero() {
        let id = ChainMap::identity(alg, x);
        return (x.clone(), id.clone(), id);
    }
    let diffs = (x.lo()..x.hi()).map(|n| fwd[&(n + 1)].mul(alg, &x.diff(alg, n)).mul(alg, &back[&n])).collect();
    let y = ProjComplex::new_unchecked(x.lo(), x.cells().to_vec(), diffs);
    let there = ChainMap::new_unchecked(x.clone(), y.clone(), fwd);
    let home = ChainMap::new_unchecked(y.clone(), x.clone(), back);
    (y, there, home)
}

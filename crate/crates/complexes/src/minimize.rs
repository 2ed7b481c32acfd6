use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::{compose, ChainMap, HomMatrix, Homotopy, ProjComplex};

/// A minimal model with homotopy-equivalence witnesses:
/// `φψ = 1` exactly and `1 - ψφ = dh + hd` on the input.
#[derive(Clone, Debug)]
pub struct Minimized<F> {
    pub complex: ProjComplex<F>,
    pub phi: ChainMap<F>,
    pub psi: ChainMap<F>,
    pub homotopy: Homotopy<F>,
}

/// First differential entry with invertible scalar part: lowest degree, then
/// column, then row.
fn find_pivot<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> Option<(i64, usize, usize)> {
    for n in x.degrees() {
        let Some(d) = x.diff_ref(n) else { continue };
        let (src, dst) = (x.cell(n), x.cell(n + 1));
        for c in 0..d.cols() {
            for r in 0..d.rows() {
                if src[c] == dst[r] && !alg.scalar_part(d.get(r, c), src[c]).is_zero() {
                    return Some((n, r, c));
                }
            }
        }
    }
    None
}

fn without(v: &[usize], k: usize) -> Vec<usize> {
    (0..v.len()).filter(|&i| i != k).collect()
}

struct Step<F> {
    next: ProjComplex<F>,
    phi: ChainMap<F>,
    psi: ChainMap<F>,
    homotopy: Homotopy<F>,
}

/// Cancels the unit entry `d^n[r][c]`.
fn eliminate<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, n: i64, r: usize, c: usize) -> Step<F> {
    let src = x.cell(n).to_vec();
    let dst = x.cell(n + 1).to_vec();
    let keep_b = without(&src, c);
    let keep_d = without(&dst, r);
    let d = x.diff(alg, n);
    let alpha = d.select_rows(&[r]).select_cols(&[c]);
    let alpha_inv = alpha.inverse(alg, &[dst[r]], &[src[c]]).expect("unit pivot");
    let beta = d.select_rows(&[r]).select_cols(&keep_b);
    let gamma = d.select_rows(&keep_d).select_cols(&[c]);
    let delta = d.select_rows(&keep_d).select_cols(&keep_b);
    let cells_b: Vec<usize> = keep_b.iter().map(|&i| src[i]).collect();
    let cells_d: Vec<usize> = keep_d.iter().map(|&i| dst[i]).collect();

    let cell = |m: i64| -> Vec<usize> {
        if m == n {
            cells_b.clone()
        } else if m == n + 1 {
            cells_d.clone()
        } else {
            x.cell(m).to_vec()
        }
    };
    let new_d = |m: i64| -> HomMatrix<F> {
        if m == n - 1 {
            x.diff(alg, m).select_rows(&keep_b)
        } else if m == n {
            delta.sub(&gamma.mul(alg, &alpha_inv).mul(alg, &beta))
        } else if m == n + 1 {
            x.diff(alg, m).select_cols(&keep_d)
        } else {
            x.diff(alg, m)
        }
    };
    let next = ProjComplex::from_degree_fn(alg, x.lo(), x.hi(), cell, new_d);

    let ga = gamma.mul(alg, &alpha_inv);
    let ab = alpha_inv.mul(alg, &beta);
    let phi = ChainMap::from_fn(x.clone(), next.clone(), |m| {
        let id = HomMatrix::identity(alg, x.cell(m));
        if m == n {
            id.select_rows(&keep_b)
        } else if m == n + 1 {
            let mut p = id.select_rows(&keep_d);
            for i in 0..keep_d.len() {
                p.set(i, r, alg.neg(ga.get(i, 0)));
            }
            p
        } else {
            id
        }
    });
    let psi = ChainMap::from_fn(next.clone(), x.clone(), |m| {
        let id = HomMatrix::identity(alg, x.cell(m));
        if m == n {
            let mut p = id.select_cols(&keep_b);
            for j in 0..keep_b.len() {
                p.set(c, j, alg.neg(ab.get(0, j)));
            }
            p
        } else if m == n + 1 {
            id.select_cols(&keep_d)
        } else {
            id
        }
    });
    let mut h = HomMatrix::zeros(alg, src.len(), dst.len());
    h.set(c, r, alpha_inv.get(0, 0).clone());
    let mut homotopy = Homotopy::zero();
    homotopy.comps.insert(n + 1, h);
    Step {
        next,
        phi,
        psi,
        homotopy,
    }
}

/// Gaussian elimination on complexes with a deterministic pivot order.
pub fn minimize<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>) -> Minimized<F> {
    let mut cur = x.clone();
    let mut phi = ChainMap::identity(alg, x);
    let mut psi = ChainMap::identity(alg, x);
    let mut homotopy = Homotopy::zero();
    while let Some((n, r, c)) = find_pivot(alg, &cur) {
        let step = eliminate(alg, &cur, n, r, c);
        let extra = step.homotopy.conjugate(alg, &psi, &phi);
        homotopy = homotopy.add(alg, x, x, &extra);
        phi = compose(alg, &step.phi, &phi).expect("composable");
        psi = compose(alg, &psi, &step.psi).expect("composable");
        cur = step.next;
    }
    // Re-anchor the maps on the trimmed complex.
    let phi = phi.with_ends(x.clone(), cur.clone());
    let psi = psi.with_ends(cur.clone(), x.clone());
    Minimized {
        complex: cur,
        phi,
        psi,
        homotopy,
    }
}

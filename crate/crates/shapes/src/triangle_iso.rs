use complexes::{compose, hom_k, homotopic, ChainMap, Homotopy, ProjComplex, Triangle};
use exact_linalg::{Matrix, Scalar};
use path_algebra::Algebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_TRIES: usize = 16;

/// Isomorphisms `a: X1 -> X2`, `b: Y1 -> Y2`, `c: Z1 -> Z2` with homotopies for
/// `b u1 ≃ u2 a`, `c v1 ≃ v2 b` and `a[1] w1 ≃ w2 c`.
#[derive(Clone, Debug)]
pub struct TriangleIso<F> {
    pub a: ChainMap<F>,
    pub b: ChainMap<F>,
    pub c: ChainMap<F>,
    pub squares: [Homotopy<F>; 3],
}

type Constraint<'a, F> = (Box<dyn Fn(&ChainMap<F>) -> ChainMap<F> + 'a>, ChainMap<F>);

/// Affine solution set `{p + K t}` of linear homotopy constraints on maps
/// `s -> t`, as chain maps.
fn solve_affine<F: Scalar>(
    alg: &Algebra<F>,
    s: &ProjComplex<F>,
    t: &ProjComplex<F>,
    constraints: &[Constraint<'_, F>],
) -> Option<(ChainMap<F>, Vec<ChainMap<F>>)> {
    let hom = hom_k(alg, s, t);
    let n = hom.dim;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    for (op, target) in constraints {
        let h = hom_k(alg, target.source(), target.target());
        let images: Vec<Vec<F>> = hom.basis.iter().map(|b| h.coordinates(&op(b)).expect("chain map")).collect();
        let goal = h.coordinates(target).expect("chain map");
        for r in 0..h.dim {
            rows.push(images.iter().map(|col| col[r].clone()).collect());
            rhs.push(goal[r].clone());
        }
    }
    let a = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(rows) };
    let b = Matrix::from_columns(rhs.len(), &[rhs]);
    let particular = if a.rows() == 0 {
        vec![F::zero(); n]
    } else {
        a.solve(&b).expect("shapes agree")?.column(0)
    };
    let kernel = if a.rows() == 0 { Matrix::identity(n) } else { a.kernel() };
    let p = hom.combine(alg, &particular);
    let ks = (0..kernel.cols()).map(|j| hom.combine(alg, &kernel.column(j))).collect();
    Some((p, ks))
}

/// A homotopy inverse of `f`, if `f` is an isomorphism in K.
pub fn k_inverse<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Option<ChainMap<F>> {
    let (x, y) = (f.source(), f.target());
    let id_x = ChainMap::identity(alg, x);
    let cons: Vec<Constraint<'_, F>> = vec![(Box::new(move |g: &ChainMap<F>| compose(alg, g, f).expect("ends")), id_x)];
    let (g, _) = solve_affine(alg, y, x, &cons)?;
    let fg = compose(alg, f, &g).ok()?;
    homotopic(alg, &fg, &ChainMap::identity(alg, y))?;
    Some(g)
}

/// First isomorphism in the affine family `p + span(k)`, trying `p`, `p + k_i`
/// and seeded combinations.
fn first_iso<F: Scalar>(alg: &Algebra<F>, p: &ChainMap<F>, ks: &[ChainMap<F>]) -> Option<ChainMap<F>> {
    let mut tries = vec![p.clone()];
    tries.extend(ks.iter().map(|k| p.add(alg, k)));
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1a);
    for _ in 0..RANDOM_TRIES {
        let mut m = p.clone();
        for k in ks {
            m = m.add(alg, &k.scale(&F::from_i64(rng.gen_range(-3..=3))));
        }
        tries.push(m);
    }
    tries.into_iter().find(|m| k_inverse(alg, m).is_some())
}

/// An isomorphism `x1 -> x2` in K between minimal complexes, found by searching
/// `Hom_K(x1, x2)`; `None` when the cells differ or the search finds none.
pub fn k_isomorphism<F: Scalar>(alg: &Algebra<F>, x1: &ProjComplex<F>, x2: &ProjComplex<F>) -> Option<ChainMap<F>> {
    if x1 == x2 {
        return Some(ChainMap::identity(alg, x1));
    }
    if x1.cell_profile() != x2.cell_profile() {
        return None;
    }
    let (p, ks) = solve_affine(alg, x1, x2, &[])?;
    first_iso(alg, &p, &ks)
}

/// An isomorphism of triangles, or `None` when the search finds none.
pub fn verify_triangle_iso<F: Scalar>(alg: &Algebra<F>, t1: &Triangle<F>, t2: &Triangle<F>) -> Option<TriangleIso<F>> {
    let a = k_isomorphism(alg, t1.x(), t2.x())?;
    let u2a = compose(alg, &t2.u, &a).ok()?;
    let b = if t1.y() == t2.y() && homotopic(alg, &t1.u, &u2a).is_some() {
        ChainMap::identity(alg, t1.y())
    } else {
        let u1 = t1.u.clone();
        let cons: Vec<Constraint<'_, F>> = vec![(Box::new(move |b: &ChainMap<F>| compose(alg, b, &u1).expect("ends")), u2a.clone())];
        let (p, ks) = solve_affine(alg, t1.y(), t2.y(), &cons)?;
        first_iso(alg, &p, &ks)?
    };
    let v2b = compose(alg, &t2.v, &b).ok()?;
    let a1w1 = compose(alg, &a.shift(1), &t1.w).ok()?;
    let (v1, w2) = (t1.v.clone(), t2.w.clone());
    let cons: Vec<Constraint<'_, F>> = vec![
        (Box::new(move |c: &ChainMap<F>| compose(alg, c, &v1).expect("ends")), v2b),
        (Box::new(move |c: &ChainMap<F>| compose(alg, &w2, c).expect("ends")), a1w1),
    ];
    let (p, ks) = solve_affine(alg, t1.z(), t2.z(), &cons)?;
    let c = first_iso(alg, &p, &ks)?;
    let squares = [
        homotopic(alg, &compose(alg, &b, &t1.u).ok()?, &compose(alg, &t2.u, &a).ok()?)?,
        homotopic(alg, &compose(alg, &c, &t1.v).ok()?, &compose(alg, &t2.v, &b).ok()?)?,
        homotopic(alg, &compose(alg, &a.shift(1), &t1.w).ok()?, &compose(alg, &t2.w, &c).ok()?)?,
    ];
    Some(TriangleIso { a, b, c, squares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced_cone;
    use crate::test_support::{a5, elem};
    use complexes::{cone, HomMatrix};

    fn slice_map() -> (Algebra<exact_linalg::Rational>, ChainMap<exact_linalg::Rational>) {
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
        (alg, f)
    }

    #[test]
    fn triangle_is_isomorphic_to_itself() {
        let (alg, f) = slice_map();
        let t = cone(&alg, &f).triangle(&f);
        let iso = verify_triangle_iso(&alg, &t, &t).unwrap();
        assert_eq!(iso.a, ChainMap::identity(&alg, t.x()));
        assert_eq!(iso.b, ChainMap::identity(&alg, t.y()));
        assert!(k_inverse(&alg, &iso.c).is_some());
    }

    #[test]
    fn cone_triangle_matches_reduced_triangle() {
        let (alg, f) = slice_map();
        let t = cone(&alg, &f).triangle(&f);
        let r = reduced_cone(&alg, &f).unwrap();
        let iso = verify_triangle_iso(&alg, &t, &r.triangle(&alg)).unwrap();
        assert!(iso.squares.iter().all(|h| h.comps.values().all(|m| m.rows() + m.cols() > 0)));
        assert!(iso.c.is_chain_map(&alg));
    }

    #[test]
    fn different_third_terms_are_rejected() {
        let (alg, f) = slice_map();
        let t = cone(&alg, &f).triangle(&f);
        let zero = ChainMap::zero(f.source(), f.target());
        let t0 = cone(&alg, &zero).triangle(&zero);
        assert!(verify_triangle_iso(&alg, &t, &t0).is_none());
    }
}

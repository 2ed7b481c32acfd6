use complexes::HomMatrix;
use exact_linalg::{Matrix, Scalar};
use path_algebra::{Algebra, Elem, Path};

use crate::rep::arrow_ends;
use crate::{RepMorphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Projective,
    Injective,
    Simple,
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Block offsets of `⊕ P_v` at vertex `t`.
pub(crate) fn proj_offsets<F: Scalar>(alg: &Algebra<F>, cells: &[usize], t: usize) -> Vec<usize> {
    offsets(cells.iter().map(|&v| alg.block(v, t).len()))
}

fn inj_offsets<F: Scalar>(alg: &Algebra<F>, cells: &[usize], t: usize) -> Vec<usize> {
    offsets(cells.iter().map(|&v| alg.block(t, v).len()))
}

fn arrow_elem<F: Scalar>(alg: &Algebra<F>, a: usize) -> Elem<F> {
    alg.path_elem(&Path::from_arrows(alg.quiver(), vec![a]).expect("single arrow"))
}

/// `⊕ P_v` over `cells`; at vertex `t` the basis is the paths from each `v`
/// to `t`, and arrows act by right multiplication.
pub fn projective<F: Scalar>(alg: &Algebra<F>, cells: &[usize]) -> Representation<F> {
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|t| *proj_offsets(alg, cells, t).last().unwrap()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let arrow = arrow_elem(alg, ai);
            let (os, ot) = (proj_offsets(alg, cells, a.source), proj_offsets(alg, cells, a.target));
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for (k, &v) in cells.iter().enumerate() {
                let rows = alg.block(v, a.target);
                for (j, &p) in alg.block(v, a.source).iter().enumerate() {
                    let prod = alg.mul(&alg.basis_elem(p), &arrow);
                    for (i, &q) in rows.iter().enumerate() {
                        m[(ot[k] + i, os[k] + j)] = prod[q].clone();
                    }
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(dims, arrow_ends(alg), maps)
}

/// `⊕ I_v` over `cells`; at vertex `t` the basis is dual to the paths from
/// `t` to each `v`.
pub fn injective<F: Scalar>(alg: &Algebra<F>, cells: &[usize]) -> Representation<F> {
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|t| *inj_offsets(alg, cells, t).last().unwrap()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let arrow = arrow_elem(alg, ai);
            let (os, ot) = (inj_offsets(alg, cells, a.source), inj_offsets(alg, cells, a.target));
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for (k, &v) in cells.iter().enumerate() {
                let cols = alg.block(a.source, v);
                for (i, &q) in alg.block(a.target, v).iter().enumerate() {
                    let prod = alg.mul(&arrow, &alg.basis_elem(q));
                    for (j, &p) in cols.iter().enumerate() {
                        m[(ot[k] + i, os[k] + j)] = prod[p].clone();
                    }
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(dims, arrow_ends(alg), maps)
}

pub fn simple<F: Scalar>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|t| usize::from(t == v)).collect();
    let ends = arrow_ends(alg);
    let maps = ends.iter().map(|&(s, t)| Matrix::zeros(dims[t], dims[s])).collect();
    Representation::new_unchecked(dims, ends, maps)
}

pub fn standard_module<F: Scalar>(alg: &Algebra<F>, kind: ModuleKind, v: usize) -> Representation<F> {
    match kind {
        ModuleKind::Projective => projective(alg, &[v]),
        ModuleKind::Injective => injective(alg, &[v]),
        ModuleKind::Simple => simple(alg, v),
    }
}

/// The module map `⊕ P_src -> ⊕ P_dst` given by left multiplication with
/// the entries of `d`.
pub fn hom_matrix_morphism<F: Scalar>(
    alg: &Algebra<F>,
    d: &HomMatrix<F>,
    src: &[usize],
    dst: &[usize],
) -> RepMorphism<F> {
    let comps = (0..alg.vertex_count())
        .map(|t| {
            let (os, ot) = (proj_offsets(alg, src, t), proj_offsets(alg, dst, t));
            let mut m = Matrix::zeros(*ot.last().unwrap(), *os.last().unwrap());
            for (c, &sv) in src.iter().enumerate() {
                for (j, &p) in alg.block(sv, t).iter().enumerate() {
                    let pe = alg.basis_elem(p);
                    for (r, &dv) in dst.iter().enumerate() {
                        let x = d.get(r, c);
                        if alg.is_zero(x) {
                            continue;
                        }
                        let prod = alg.mul(x, &pe);
                        for (i, &q) in alg.block(dv, t).iter().enumerate() {
                            m[(ot[r] + i, os[c] + j)] = prod[q].clone();
                        }
                    }
                }
            }
            m
        })
        .collect();
    RepMorphism { comps }
}

/// The Nakayama image `⊕ I_src -> ⊕ I_dst` of the map given by `d`.
pub fn nakayama_morphism<F: Scalar>(
    alg: &Algebra<F>,
    d: &HomMatrix<F>,
    src: &[usize],
    dst: &[usize],
) -> RepMorphism<F> {
    let comps = (0..alg.vertex_count())
        .map(|t| {
            let (os, ot) = (inj_offsets(alg, src, t), inj_offsets(alg, dst, t));
            let mut m = Matrix::zeros(*ot.last().unwrap(), *os.last().unwrap());
            for (r, &dv) in dst.iter().enumerate() {
                for (i, &q) in alg.block(t, dv).iter().enumerate() {
                    let qe = alg.basis_elem(q);
                    for (c, &sv) in src.iter().enumerate() {
                        let x = d.get(r, c);
                        if alg.is_zero(x) {
                            continue;
                        }
                        let prod = alg.mul(&qe, x);
                        for (j, &p) in alg.block(t, sv).iter().enumerate() {
                            m[(ot[r] + i, os[c] + j)] = prod[p].clone();
                        }
                    }
                }
            }
            m
        })
        .collect();
    RepMorphism { comps }
}

/// Reads a vector of `(⊕ P_cells)_v` as a column of elements, entry `r` in
/// `e_(cells[r]) Λ e_v`.
pub fn vector_to_column<F: Scalar>(alg: &Algebra<F>, cells: &[usize], v: usize, vec: &[F]) -> Vec<Elem<F>> {
    let off = proj_offsets(alg, cells, v);
    cells
        .iter()
        .enumerate()
        .map(|(r, &c)| {
            let mut x = alg.zero();
            for (i, &b) in alg.block(c, v).iter().enumerate() {
                x[b] = vec[off[r] + i].clone();
            }
            x
        })
        .collect()
}

pub fn column_to_vector<F: Scalar>(alg: &Algebra<F>, cells: &[usize], v: usize, col: &[Elem<F>]) -> Vec<F> {
    let mut out = Vec::new();
    for (r, &c) in cells.iter().enumerate() {
        out.extend(alg.block(c, v).iter().map(|&b| col[r][b].clone()));
    }
    out
}

/// The vector of `(⊕ P_cells)_v` for the generator of summand `k`.
pub(crate) fn generator_vector<F: Scalar>(alg: &Algebra<F>, cells: &[usize], k: usize) -> Vec<F> {
    let v = cells[k];
    let mut col = vec![alg.zero(); cells.len()];
    col[k] = alg.unit(v);
    column_to_vector(alg, cells, v, &col)
}

/// The map `⊕ P_cells -> M` sending the generator of summand `k` to
/// `images[k] ∈ M_(cells[k])`.
pub fn generator_map<F: Scalar>(
    alg: &Algebra<F>,
    cells: &[usize],
    m: &Representation<F>,
    images: &[Vec<F>],
) -> RepMorphism<F> {
    let comps = (0..alg.vertex_count())
        .map(|t| {
            let off = proj_offsets(alg, cells, t);
            let mut cols: Vec<Vec<F>> = Vec::with_capacity(*off.last().unwrap());
            for (k, &v) in cells.iter().enumerate() {
                for &p in alg.block(v, t) {
                    cols.push(m.path_matrix(&alg.basis()[p]).mul_vec(&images[k]));
                }
            }
            Matrix::from_columns(m.dim(t), &cols)
        })
        .collect();
    RepMorphism { comps }
}

/// Generators of `sub` modulo `rad sub + avoid`, as `(vertex, vector)` in
/// ambient coordinates, sorted by vertex.
pub(crate) fn relative_top<F: Scalar>(
    m: &Representation<F>,
    sub: &[Matrix<F>],
    avoid: &[Matrix<F>],
) -> Vec<(usize, Vec<F>)> {
    let mut out = Vec::new();
    for t in 0..m.dims().len() {
        if sub[t].cols() == 0 {
            continue;
        }
        let mut w = avoid[t].clone();
        for (a, &(s, tt)) in m.ends().iter().enumerate() {
            if tt == t {
                w = w.hstack(&m.map(a).mul(&sub[s]));
            }
        }
        let joined = w.hstack(&sub[t]);
        for p in joined.rref().pivots {
            if p >= w.cols() {
                out.push((t, sub[t].column(p - w.cols())));
            }
        }
    }
    out
}

/// Minimal `⊕ P_cells -> M`, cells sorted by vertex.
pub fn projective_cover<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>) -> (Vec<usize>, RepMorphism<F>) {
    let sub: Vec<Matrix<F>> = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
    let avoid: Vec<Matrix<F>> = m.dims().iter().map(|&d| Matrix::zeros(d, 0)).collect();
    let gens = relative_top(m, &sub, &avoid);
    let cells: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let images: Vec<Vec<F>> = gens.into_iter().map(|g| g.1).collect();
    let cover = generator_map(alg, &cells, m, &images);
    (cells, cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{a3_hereditary, a5, elem};
    use crate::{hom_rep, top_and_radical};

    #[test]
    fn projective_dimensions() {
        let alg = a5();
        let p5 = projective(&alg, &[4]);
        assert_eq!(p5.total_dim(), 4);
        assert_eq!(p5.dims(), &[0, 1, 1, 1, 1]);
        assert!(Representation::new(&alg, p5.dims().to_vec(), p5.maps().to_vec()).is_ok());
        let (top, rad) = top_and_radical(&alg, &p5);
        assert_eq!(top, vec![0, 0, 0, 0, 1]);
        assert_eq!(rad.rep.total_dim(), 3);
    }

    #[test]
    fn injectives_satisfy_relations() {
        let alg = a5();
        for v in 0..5 {
            let i = injective(&alg, &[v]);
            assert!(Representation::new(&alg, i.dims().to_vec(), i.maps().to_vec()).is_ok());
            let s = simple(&alg, v);
            assert_eq!(hom_rep(&alg, &s, &i).len(), 1);
        }
        assert_eq!(injective(&alg, &[0]).total_dim(), 4);
    }

    #[test]
    fn hom_from_projective_is_vertex_space() {
        let alg = a3_hereditary();
        let m = injective(&alg, &[0]).direct_sum(&projective(&alg, &[2]));
        for v in 0..3 {
            assert_eq!(hom_rep(&alg, &projective(&alg, &[v]), &m).len(), m.dim(v));
        }
    }

    #[test]
    fn morphism_of_projectives() {
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let f = hom_matrix_morphism(&alg, &d, &[0], &[1]);
        assert!(f.check(&alg, &projective(&alg, &[0]), &projective(&alg, &[1])).is_ok());
        let g = nakayama_morphism(&alg, &d, &[0], &[1]);
        assert!(g.check(&alg, &injective(&alg, &[0]), &injective(&alg, &[1])).is_ok());
        assert!(!g.is_zero());
    }

    #[test]
    fn cover_of_simple_and_projective() {
        let alg = a5();
        for v in 0..5 {
            let (cells, pi) = projective_cover(&alg, &simple(&alg, v));
            assert_eq!(cells, vec![v]);
            assert!(pi.check(&alg, &projective(&alg, &[v]), &simple(&alg, v)).is_ok());
            let p = projective(&alg, &[v]);
            let (cells, pi) = projective_cover(&alg, &p);
            assert_eq!(cells, vec![v]);
            assert!(pi.is_iso());
        }
    }

    #[test]
    fn column_round_trip() {
        let alg = a5();
        let cells = [1, 3, 4];
        let v = 0;
        let n = projective(&alg, &cells).dim(v);
        let vec: Vec<_> = (0..n).map(|i| exact_linalg::Rational::from_i64(i as i64 + 1)).collect();
        let col = vector_to_column(&alg, &cells, v, &vec);
        assert!(col.iter().zip(&cells).all(|(x, &c)| alg.lies_in(x, c, v)));
        assert_eq!(column_to_vector(&alg, &cells, v, &col), vec);
    }
}

use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::{ChainMap, HomMatrix, ProjComplex};

fn transport<F: Scalar>(alg: &Algebra<F>, op: &Algebra<F>, m: &HomMatrix<F>) -> HomMatrix<F> {
    m.transpose().map_entries(|e| alg.transport_reversed(e, op))
}

/// `Hom_Λ(X, Λ)` as a complex over the opposite algebra `op`:
/// `X*^n = X^(-n)`, with differential the transpose of `d^(-n-1)`, paths
/// read backwards.
pub fn dual_complex<F: Scalar>(alg: &Algebra<F>, op: &Algebra<F>, x: &ProjComplex<F>) -> ProjComplex<F> {
    if x.is_zero() {
        return ProjComplex::zero();
    }
    let lo = -x.hi();
    let cells = (lo..=-x.lo()).map(|n| x.cell(-n).to_vec()).collect();
    let diffs = (lo..-x.lo()).map(|n| transport(alg, op, &x.diff(alg, -n - 1))).collect();
    ProjComplex::new_unchecked(lo, cells, diffs)
}

/// `f*: Y* -> X*` for `f: X -> Y`.
pub fn dual_map<F: Scalar>(alg: &Algebra<F>, op: &Algebra<F>, f: &ChainMap<F>) -> ChainMap<F> {
    let xs = dual_complex(alg, op, f.source());
    let ys = dual_complex(alg, op, f.target());
    ChainMap::from_fn(ys, xs, |n| transport(alg, op, &f.comp(alg, -n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{a5, elem};
    use crate::{cone, hom_k};

    #[test]
    fn double_dual_is_identity() {
        let alg = a5();
        let op = alg.opposite().unwrap();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let x = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![d]).unwrap();
        let xs = dual_complex(&alg, &op, &x);
        assert_eq!((xs.lo(), xs.hi()), (0, 1));
        assert!(ProjComplex::new(&op, xs.lo(), xs.cells().to_vec(), vec![xs.diff(&op, 0)]).is_ok());
        assert_eq!(dual_complex(&op, &alg, &xs), x);
    }

    #[test]
    fn dual_is_contravariant_on_hom() {
        let alg = a5();
        let op = alg.opposite().unwrap();
        let x = ProjComplex::stalk(vec![0], 0);
        let y = ProjComplex::stalk(vec![1], 0);
        let f = ChainMap::from_fn(x.clone(), y.clone(), |_| HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta")));
        let fs = dual_map(&alg, &op, &f);
        assert!(fs.is_chain_map(&op));
        let c = cone(&alg, &f).complex;
        let cs = dual_complex(&alg, &op, &c);
        let h1 = hom_k(&alg, &c, &x).dim;
        let h2 = hom_k(&op, &dual_complex(&alg, &op, &x), &cs).dim;
        assert_eq!(h1, h2);
    }
}

use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::{ChainMap, HomMatrix, ProjComplex, Triangle};

/// The standard triangle `X -f-> Y -t-> C -p-> X[1]`.
#[derive(Clone, Debug)]
pub struct Cone<F> {
    pub complex: ProjComplex<F>,
    pub inclusion: ChainMap<F>,
    pub projection: ChainMap<F>,
}

impl<F: Scalar> Cone<F> {
    pub fn triangle(&self, f: &ChainMap<F>) -> Triangle<F> {
        Triangle {
            u: f.clone(),
            v: self.inclusion.clone(),
            w: self.projection.clone(),
        }
    }
}

/// `C^n = X^(n+1) ⊕ Y^n` with differential `[[-d, 0], [f, ∂]]`.
pub fn cone<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Cone<F> {
    let (x, y) = (f.source(), f.target());
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let cells = |n: i64| {
        let mut c = x.cell(n + 1).to_vec();
        c.extend_from_slice(y.cell(n));
        c
    };
    let complex = if x.is_zero() && y.is_zero() {
        ProjComplex::zero()
    } else {
        ProjComplex::from_degree_fn(alg, lo, hi, cells, |n| {
            let top = x.diff(alg, n + 1).neg().hstack(&HomMatrix::zeros(alg, x.cell(n + 2).len(), y.cell(n).len()));
            let bottom = f.comp(alg, n + 1).hstack(&y.diff(alg, n));
            top.vstack(&bottom)
        })
    };
    let inclusion = ChainMap::from_fn(y.clone(), complex.clone(), |n| {
        let k = x.cell(n + 1).len();
        HomMatrix::zeros(alg, k, y.cell(n).len()).vstack(&HomMatrix::identity(alg, y.cell(n)))
    });
    let shifted = x.shift(1);
    let projection = ChainMap::from_fn(complex.clone(), shifted, |n| {
        HomMatrix::identity(alg, x.cell(n + 1)).hstack(&HomMatrix::zeros(alg, x.cell(n + 1).len(), y.cell(n).len()))
    });
    Cone {
        complex,
        inclusion,
        projection,
    }
}

use crate::{Matrix, Scalar};

/// A subspace given by independent columns, with a precomputed left inverse
/// so that coordinates of a vector cost one matrix-vector product.
#[derive(Clone)]
pub struct Span<F> {
    basis: Matrix<F>,
    left: Matrix<F>,
    residual: Matrix<F>,
}

impl<F: Scalar> Span<F> {
    /// Keeps a maximal independent prefix-greedy subset of the given columns.
    pub fn from_columns(m: &Matrix<F>) -> Self {
        let pivots = m.rref().pivots;
        let basis = m.select_columns(&pivots);
        Self::from_independent(basis)
    }

    /// `basis` must have independent columns.
    pub fn from_independent(basis: Matrix<F>) -> Self {
        let n = basis.rows();
        let k = basis.cols();
        let aug = basis.hstack(&Matrix::identity(n));
        let r = aug.rref();
        assert!(r.pivots.iter().take(k).enumerate().all(|(i, &p)| p == i), "dependent columns");
        let t = Matrix::from_fn(n, n, |i, j| r.matrix[(i, k + j)].clone());
        let left = t.select_rows(&(0..k).collect::<Vec<_>>());
        let residual = t.select_rows(&(k..n).collect::<Vec<_>>());
        Span { basis, left, residual }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.residual.mul_vec(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        self.contains(v).then(|| self.left.mul_vec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QMatrix;

    #[test]
    fn coordinates_roundtrip() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[0, 0, 1], &[1, 2, 0]]);
        let s = Span::from_columns(&m);
        assert_eq!(s.dim(), 2);
        let v = m.column(2);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.basis().mul_vec(&c), v);
        let outside = QMatrix::from_i64(&[&[0], &[1], &[1]]).column(0);
        assert!(s.coordinates(&outside).is_none());
    }
}

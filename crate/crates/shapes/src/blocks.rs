use complexes::HomMatrix;
use exact_linalg::Scalar;
use path_algebra::Algebra;

/// Copies `b` into `m` with its top-left corner at `(r0, c0)`.
pub(crate) fn place<F: Scalar>(m: &mut HomMatrix<F>, r0: usize, c0: usize, b: &HomMatrix<F>) {
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(r0 + i, c0 + j, b.get(i, j).clone());
        }
    }
}

/// A `rows × cols` matrix assembled from blocks at given offsets.
pub(crate) fn grid<F: Scalar>(
    alg: &Algebra<F>,
    rows: usize,
    cols: usize,
    blocks: &[(usize, usize, &HomMatrix<F>)],
) -> HomMatrix<F> {
    let mut m = HomMatrix::zeros(alg, rows, cols);
    for (r0, c0, b) in blocks {
        place(&mut m, *r0, *c0, b);
    }
    m
}

/// Identity on `cells`, embedded at `(r0, c0)` of a `rows × cols` matrix.
pub(crate) fn embed_identity<F: Scalar>(
    alg: &Algebra<F>,
    rows: usize,
    cols: usize,
    r0: usize,
    c0: usize,
    cells: &[usize],
) -> HomMatrix<F> {
    grid(alg, rows, cols, &[(r0, c0, &HomMatrix::identity(alg, cells))])
}

pub(crate) fn sub<F: Scalar>(m: &HomMatrix<F>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> HomMatrix<F> {
    m.row_range(rows.start, rows.end).col_range(cols.start, cols.end)
}

pub(crate) fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

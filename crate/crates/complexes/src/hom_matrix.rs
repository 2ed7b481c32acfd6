use exact_linalg::{Matrix, Scalar};
use path_algebra::{Algebra, Elem};

/// A matrix of algebra elements: a map `⊕ P_col -> ⊕ P_row`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Elem<F>>,
}

impl<F: Scalar> HomMatrix<F> {
    pub fn zeros(alg: &Algebra<F>, rows: usize, cols: usize) -> Self {
        HomMatrix {
            rows,
            cols,
            entries: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &Algebra<F>, cells: &[usize]) -> Self {
        let mut m = Self::zeros(alg, cells.len(), cells.len());
        for (i, &v) in cells.iter().enumerate() {
            m.set(i, i, alg.unit(v));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        HomMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Elem<F> {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem<F>) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|c| c.is_zero()))
    }

    pub fn mul(&self, alg: &Algebra<F>, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "hom matrix product shape");
        let mut out = Self::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if alg.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if alg.is_zero(b) {
                        continue;
                    }
                    let p = alg.mul(a, b);
                    let e = out.get_mut(i, j);
                    for (x, y) in e.iter_mut().zip(p) {
                        if !y.is_zero() {
                            *x = x.add_ref(&y);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "hom matrix sum shape");
        HomMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        HomMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|a| a.iter().map(|x| x.mul_ref(c)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack rows");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        HomMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn block_diag(alg: &Algebra<F>, a: &Self, b: &Self) -> Self {
        let z1 = Self::zeros(alg, a.rows, b.cols);
        let z2 = Self::zeros(alg, b.rows, a.cols);
        Self::block(a, &z1, &z2, b)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn row_range(&self, from: usize, to: usize) -> Self {
        self.select_rows(&(from..to).collect::<Vec<_>>())
    }

    pub fn col_range(&self, from: usize, to: usize) -> Self {
        self.select_cols(&(from..to).collect::<Vec<_>>())
    }

    pub fn is_radical(&self, alg: &Algebra<F>) -> bool {
        self.entries.iter().all(|e| alg.is_radical(e))
    }

    /// Checks that every entry lies in `e_row Λ e_col`.
    pub fn fits(&self, alg: &Algebra<F>, row_cells: &[usize], col_cells: &[usize]) -> Option<(usize, usize)> {
        if row_cells.len() != self.rows || col_cells.len() != self.cols {
            return Some((self.rows, self.cols));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !alg.lies_in(self.get(i, j), row_cells[i], col_cells[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Coefficients of the trivial paths: the induced map on tops.
    pub fn scalar_part(&self, alg: &Algebra<F>, row_cells: &[usize], col_cells: &[usize]) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            if row_cells[i] == col_cells[j] {
                alg.scalar_part(self.get(i, j), row_cells[i])
            } else {
                F::zero()
            }
        })
    }

    /// Lifts a scalar matrix; entries between different vertices must vanish.
    pub fn from_scalar(alg: &Algebra<F>, m: &Matrix<F>, row_cells: &[usize], col_cells: &[usize]) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            let c = &m[(i, j)];
            if c.is_zero() {
                alg.zero()
            } else {
                assert_eq!(row_cells[i], col_cells[j], "scalar entry between distinct vertices");
                alg.scale(c, &alg.unit(row_cells[i]))
            }
        })
    }

    /// Two-sided inverse of an isomorphism `⊕ P_col -> ⊕ P_row`.
    pub fn inverse(&self, alg: &Algebra<F>, row_cells: &[usize], col_cells: &[usize]) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let s_inv = self.scalar_part(alg, row_cells, col_cells).inverse()?;
        let s_inv = Self::from_scalar(alg, &s_inv, col_cells, row_cells);
        let id = Self::identity(alg, col_cells);
        // self = S (1 + M) with M = S^-1 self - 1 radical and nilpotent.
        let m = s_inv.mul(alg, self).sub(&id);
        let mut series = id.clone();
        let mut power = id;
        for _ in 0..alg.nilpotency() {
            power = power.mul(alg, &m).neg();
            if power.is_zero() {
                break;
            }
            series = series.add(&power);
        }
        Some(series.mul(alg, &s_inv))
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, f: impl Fn(&Elem<F>) -> Elem<F>) -> Self {
        HomMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn format(&self, alg: &Algebra<F>) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| alg.format_elem(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

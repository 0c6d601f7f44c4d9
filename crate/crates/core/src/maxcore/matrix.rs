use std::fmt;

use crate::error::{Error, Result, Shape};
use crate::scalar::Scalar;

use super::Permutation;

/// Dense nonnegative matrix over the max-times semiring, stored row-major.
///
/// Values are immutable: every operation returns a fresh matrix. Entries are
/// finite and nonnegative, and both dimensions are at least 1.
#[derive(Clone, PartialEq)]
pub struct MaxMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> MaxMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        for (idx, &v) in data.iter().enumerate() {
            if !(v.is_finite() && v >= T::zero()) {
                return Err(Error::InvalidEntry {
                    row: idx / cols + 1,
                    col: idx % cols + 1,
                    value: v.as_f64(),
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::EntryCount {
                rows: r,
                cols: c,
                expected: r * c,
                got: r * c - c + bad.len(),
            });
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    /// Builds from `f64` literals; convenient in tests and fixtures.
    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self> {
        let converted: Vec<Vec<T>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| T::lit(x)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        Ok(m)
    }

    pub fn diag(values: &[T]) -> Result<Self> {
        let n = values.len();
        let mut m = Self::zeros(n, n)?;
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        Self::new(n, n, m.data)
    }

    /// Column vector from values.
    pub fn column(values: &[T]) -> Result<Self> {
        Self::new(values.len(), 1, values.to_vec())
    }

    /// Standard basis column `e_i` of length `n` (0-based `i`).
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut m = Self::zeros(n, 1)?;
        m.data[i] = T::one();
        Ok(m)
    }

    /// Builds from a closure over `(row, col)`; the result is validated.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Internal constructor for results of closed operations on valid inputs.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> Shape {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry `(i, j)`, 0-based. Panics when out of bounds.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_values(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: T) -> Result<Self> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange { index: i, n: self.rows });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange { index: j, n: self.cols });
        }
        let mut data = self.data.clone();
        data[i * self.cols + j] = value;
        Self::new(self.rows, self.cols, data)
    }

    pub fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self::from_parts(self.cols, self.rows, data)
    }

    /// `A ⊗ B`: entry `(i, j)` is `max_k a_ik * b_kj`.
    pub fn max_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "max_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (m, n, l) = (self.rows, self.cols, other.cols);
        let mut data = vec![T::zero(); m * l];
        for i in 0..m {
            let out = &mut data[i * l..(i + 1) * l];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == T::zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let v = a * other.data[k * l + j];
                    if v > *o {
                        *o = v;
                    }
                }
            }
        }
        Ok(Self::from_parts(m, l, data))
    }

    /// `A ⊕ B`: entrywise maximum.
    pub fn max_add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "max_add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.oplus(b))
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    /// `k`-fold max product. `k = 0` yields the identity.
    pub fn max_pow(&self, k: usize) -> Result<Self> {
        let n = self.require_square("max_pow")?;
        let mut acc = Self::identity(n)?;
        for _ in 0..k {
            acc = acc.max_mul(self)?;
        }
        Ok(acc)
    }

    /// `tr⊗(A) = max_i a_ii`.
    pub fn trace_max(&self) -> Result<T> {
        self.require_square("trace_max")?;
        Ok(self.diagonal().into_iter().fold(T::zero(), T::oplus))
    }

    /// `‖A‖ = max_ij a_ij`.
    pub fn norm_max(&self) -> T {
        self.data.iter().copied().fold(T::zero(), T::oplus)
    }

    /// Positions `(i, j)` with `a_ij = ‖A‖`, row-major order.
    pub fn argmax(&self) -> (usize, usize) {
        let d = self.norm_max();
        let idx = self.data.iter().position(|&v| v == d).unwrap_or(0);
        (idx / self.cols, idx % self.cols)
    }

    /// Ordinary scalar multiple `αA` (the max-times scalar action).
    pub fn scale(&self, alpha: T) -> Result<Self> {
        Self::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| alpha * v).collect(),
        )
    }

    /// Entrywise `|A - B|` in ordinary arithmetic.
    pub fn abs_diff(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "abs_diff",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    /// `‖A - B‖`.
    pub fn dist(&self, other: &Self) -> Result<T> {
        Ok(self.abs_diff(other)?.norm_max())
    }

    /// Principal submatrix on the given (0-based) indices, in that order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self> {
        let n = self.require_square("principal_submatrix")?;
        if indices.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        let m = indices.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                data.push(self.get(i, j));
            }
        }
        Ok(Self::from_parts(m, m, data))
    }

    /// `Pᵗ ⊗ A ⊗ P` where `P` is the matrix of `sigma`; entry `(i, j)` of the
    /// result is `a_{σ(i), σ(j)}`.
    pub fn conjugate_by_permutation(&self, sigma: &Permutation) -> Result<Self> {
        let n = self.require_square("conjugate_by_permutation")?;
        if sigma.len() != n {
            return Err(Error::DimensionMismatch {
                op: "conjugate_by_permutation",
                left: self.shape(),
                right: (sigma.len(), sigma.len()),
            });
        }
        let map = sigma.as_slice();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(map[i], map[j]));
            }
        }
        Ok(Self::from_parts(n, n, data))
    }

    /// Permutation `σ` such that conjugating by it sorts the diagonal in
    /// ascending order. Ties keep their original relative order.
    pub fn sort_diagonal_permutation(&self) -> Result<Permutation> {
        self.require_square("sort_diagonal_permutation")?;
        let diag = self.diagonal();
        let mut order: Vec<usize> = (0..diag.len()).collect();
        order.sort_by(|&a, &b| diag[a].partial_cmp(&diag[b]).expect("finite entries"));
        Permutation::new(order)
    }

    /// Returns the index of the first descent in the diagonal, if any.
    pub fn first_diagonal_descent(&self) -> Option<usize> {
        let d = self.diagonal();
        d.windows(2).position(|w| w[1] < w[0]).map(|p| p + 1)
    }

    /// Converts to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Result<MaxMatrix<U>> {
        MaxMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| U::lit(v.as_f64())).collect(),
        )
    }
}

impl<T: fmt::Debug> fmt::Debug for MaxMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MaxMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols)).finish()
    }
}

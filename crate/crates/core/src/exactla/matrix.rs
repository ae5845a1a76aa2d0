//! Dense rational matrices and exact Gauss–Jordan elimination.
//!
//! Storage is dense row-major. The kernels skip zero entries, which matters
//! because almost every action matrix in this crate is very sparse.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    /// Pivot column of each nonzero row of `reduced`, increasing.
    pub pivots: Vec<usize>,
    /// The reduced row echelon form (same shape as the input).
    pub reduced: Matrix,
    /// Columns span the null space; `cols x (cols - rank)`.
    pub kernel_basis: Matrix,
    /// The pivot columns of the input; they span its column space.
    pub image_basis: Matrix,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Convenience for tests and fixed tables.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Rational::from_integer(x)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m[(i, j)] = x.clone();
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if !x.is_zero() {
                    t[(j, i)] = x.clone();
                }
            }
        }
        t
    }

    /// Nonzero pattern of every row, used by the sparse-aware kernels.
    fn row_supports(&self) -> Vec<Vec<(usize, &Rational)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let support = rhs.row_supports();
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let base = i * rhs.cols;
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &support[k] {
                    let slot = &mut out.data[base + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(rhs, |a, b| {
            if b.is_zero() {
                a.clone()
            } else {
                a + b
            }
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(rhs, |a, b| {
            if b.is_zero() {
                a.clone()
            } else {
                a - b
            }
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { x * c })
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Rational::one())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (s, o) in self.data.iter_mut().zip(&other.data) {
            if !o.is_zero() {
                *s = &*s + &(c * o);
            }
        }
    }

    /// Kronecker product `self ⊗ rhs`, index `(i*rhs.rows + k, j*rhs.cols + l)`.
    pub fn kronecker(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        let rs = rhs.row_supports();
        for i in 0..self.rows {
            for (j, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, row) in rs.iter().enumerate() {
                    for &(l, b) in row {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        if self.rows != rhs.rows {
            return Err(MatrixError::Shape("hstack row mismatch".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != rhs.cols {
            return Err(MatrixError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Relabels indices: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> Matrix {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[(perm[i], perm[j])] = x.clone();
                }
            }
        }
        out
    }

    fn into_row_vecs(self) -> Vec<Vec<Rational>> {
        let cols = self.cols;
        let mut it = self.data.into_iter();
        (0..self.rows)
            .map(|_| it.by_ref().take(cols).collect())
            .collect()
    }

    /// Gauss–Jordan on `rows`, restricted to the first `ncols` columns for
    /// pivot search; any trailing columns are carried along. Pivot row is the
    /// first row (at or below the current position) with a nonzero entry.
    fn eliminate(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..ncols {
            if next == rows.len() {
                break;
            }
            let Some(r) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(r, next);
            let inv = rows[next][col].recip();
            let width = rows[next].len();
            let mut support = Vec::new();
            for j in col..width {
                if !rows[next][j].is_zero() {
                    if !inv.is_one() {
                        rows[next][j] = &rows[next][j] * &inv;
                    }
                    support.push(j);
                }
            }
            let (head, tail) = rows.split_at_mut(next);
            let (pivot_row, tail) = tail.split_first_mut().unwrap();
            for row in head.iter_mut().chain(tail.iter_mut()) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for &j in &support {
                    row[j] = row[j].sub_mul(&f, &pivot_row[j]);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.clone().into_row_vecs();
        let pivots = Matrix::eliminate(&mut rows, self.cols);
        let rank = pivots.len();
        let reduced = Matrix {
            rows: self.rows,
            cols: self.cols,
            data: rows.into_iter().flatten().collect(),
        };
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; self.cols];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            (0..self.cols).filter(|&c| !is_pivot[c]).collect()
        };
        let mut kernel_basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            kernel_basis[(f, k)] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                let x = &reduced[(r, f)];
                if !x.is_zero() {
                    kernel_basis[(p, k)] = -x;
                }
            }
        }
        let image_basis = self.select_cols(&pivots);
        Rref {
            rank,
            pivots,
            reduced,
            kernel_basis,
            image_basis,
        }
    }

    pub fn rank(&self) -> usize {
        let nonzero = self.data.iter().filter(|x| !x.is_zero()).count();
        if self.rows.min(self.cols) >= 12 && 4 * nonzero >= self.data.len() {
            return self.bareiss_rank();
        }
        // Eliminate along the shorter side.
        let mut rows = if self.rows <= self.cols {
            self.clone().into_row_vecs()
        } else {
            self.transpose().into_row_vecs()
        };
        let width = rows.first().map_or(0, Vec::len);
        Matrix::eliminate(&mut rows, width).len()
    }

    /// Fraction-free rank over ℤ after clearing denominators row by row.
    /// Entries stay bounded by minors, where rational Gauss–Jordan on a dense
    /// matrix pays for a gcd at every update.
    pub fn bareiss_rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(r, rank);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            let p = &pivot_row[col];
            for row in tail.iter_mut() {
                let f = row[col].clone();
                for j in col + 1..self.cols {
                    let v = &row[j] * p - &f * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = p.clone();
            rank += 1;
        }
        rank
    }

    pub fn kernel(&self) -> Matrix {
        self.rref().kernel_basis
    }

    /// Pivot indices of the columns, i.e. a maximal independent prefix-greedy
    /// subset of columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut rows = self.clone().into_row_vecs();
        Matrix::eliminate(&mut rows, self.cols)
    }

    /// One exact solution of `self * x = b`.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, MatrixError> {
        if self.rows != b.rows {
            return Err(MatrixError::Shape(format!(
                "solve: {} rows vs {} rows",
                self.rows, b.rows
            )));
        }
        let mut rows = self.hstack(b)?.into_row_vecs();
        let pivots = Matrix::eliminate(&mut rows, self.cols);
        for row in &rows[pivots.len()..] {
            if row[self.cols..].iter().any(|x| !x.is_zero()) {
                return Err(MatrixError::NoSolution);
            }
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = rows[r][self.cols + j].clone();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape("inverse of non-square matrix".into()));
        }
        let mut rows = self.hstack(&Matrix::identity(self.rows))?.into_row_vecs();
        let pivots = Matrix::eliminate(&mut rows, self.cols);
        if pivots.len() < self.rows {
            return Err(MatrixError::Singular);
        }
        Ok(Matrix::from_fn(self.rows, self.rows, |i, j| {
            rows[i][self.cols + j].clone()
        }))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

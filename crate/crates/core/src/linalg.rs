//! Dense linear algebra over an ordered field.
//!
//! Everything here is generic over [`Scalar`], which any exact rational type
//! (`BigRational`, `Ratio<i64>`) and the primitive floats satisfy. The rest of
//! the crate instantiates it with [`Rational`]; floats are supported for
//! experimentation but pivots are then compared exactly, so results are only
//! as good as the floating-point input.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Signed;
use std::fmt;
use std::ops::{Index, IndexMut};

/// Field scalars usable by [`Matrix`].
pub trait Scalar: Clone + PartialOrd + Signed + fmt::Debug {}

impl<T> Scalar for T where T: Clone + PartialOrd + Signed + fmt::Debug {}

/// Arbitrary-precision rationals, the default exact scalar.
pub type Rational = BigRational;
/// Matrices over [`Rational`].
pub type QMatrix = Matrix<Rational>;
/// Matrices over machine-word rationals; overflow panics, so keep entries small.
pub type Q64Matrix = Matrix<Ratio<i64>>;
/// Floating-point matrices.
pub type F64Matrix = Matrix<f64>;

/// Builds the rational `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integral rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders a rational as `a/b` in lowest terms, or `a` when integral.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    ///
    /// # Panics
    /// Panics when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Converts an integer matrix given as rows.
    pub fn from_int_rows(rows: &[Vec<i64>], conv: impl Fn(i64) -> T) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| conv(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Matrix product.
    ///
    /// # Panics
    /// Panics on a dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Bilinear pairing `xᵀ M y`.
    pub fn pair(&self, x: &[T], y: &[T]) -> T {
        let my = self.mul_vec(y);
        x.iter().zip(&my).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Reduces a copy to row echelon form with partial pivoting and returns it
    /// together with the pivot columns and the sign of the row permutation.
    fn echelon(&self) -> (Self, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut flipped = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .max_by(|&a, &b| {
                    m[(a, c)].abs().partial_cmp(&m[(b, c)].abs()).unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                flipped = !flipped;
            }
            let piv = m[(r, c)].clone();
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, flipped)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (m, pivots, flipped) = self.echelon();
        if pivots.len() < self.rows {
            return T::zero();
        }
        let d = (0..self.rows).fold(T::one(), |acc, i| acc * m[(i, i)].clone());
        if flipped {
            -d
        } else {
            d
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (mut m, pivots, _) = self.echelon();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let piv = m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() / piv.clone();
                m[(r, j)] = v;
            }
            for i in 0..r {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        (m, pivots)
    }

    /// Solves `M x = b`, returning `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &c) in pivots.iter().enumerate() {
                    v[c] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, computed by
    /// symmetric Gaussian elimination (congruence diagonalization).
    ///
    /// # Panics
    /// Panics when the matrix is not symmetric.
    pub fn inertia(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "inertia of a non-symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let (mut pos, mut neg) = (0, 0);
        let mut k = 0;
        while k < n {
            if a[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                    a.swap_sym(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                    // row/col k += row/col j makes the diagonal 2·a_kj ≠ 0
                    a.add_sym(k, j);
                } else {
                    k += 1;
                    continue;
                }
            }
            let piv = a[(k, k)].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone() / piv.clone();
                for j in k..n {
                    let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
                for j in k..n {
                    let v = a[(j, i)].clone() - f.clone() * a[(j, k)].clone();
                    a[(j, i)] = v;
                }
            }
            k += 1;
        }
        (pos, neg, n - pos - neg)
    }

    fn swap_sym(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_sym(&mut self, k: usize, j: usize) {
        for c in 0..self.cols {
            let v = self[(k, c)].clone() + self[(j, c)].clone();
            self[(k, c)] = v;
        }
        for r in 0..self.rows {
            let v = self[(r, k)].clone() + self[(r, j)].clone();
            self[(r, k)] = v;
        }
    }

    /// Applies `f` entrywise.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

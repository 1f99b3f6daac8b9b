use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::rational::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// # Panics
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix with an explicit column count, so that zero-row
    /// matrices keep their width.
    pub fn from_row_slices(cols: usize, rows: &[Vec<Rational>]) -> Self {
        assert!(rows.iter().all(|row| row.len() == cols), "row width mismatch");
        RMatrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect(),
        )
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data length mismatch");
        RMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    /// Entries in row-major order.
    pub fn as_flat(&self) -> &[Rational] {
        &self.data
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self * other`, sparse-aware.
    pub fn matmul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> RMatrix {
        assert!(self.is_square());
        let mut acc = RMatrix::identity(self.rows);
        for _ in 0..exp {
            acc = acc.matmul(self);
        }
        acc
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &RMatrix) -> RMatrix {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Smallest `k >= 1` with `self^k = 0`, or `None` if not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        let mut p = self.clone();
        for k in 1..=n.max(1) {
            if p.is_zero() {
                return Some(k);
            }
            p = p.matmul(self);
        }
        if n == 0 {
            Some(1)
        } else {
            None
        }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &RMatrix) -> RMatrix {
        let mut out = RMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RMatrix {
        let mut out = RMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// `x^T self y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        assert!(x.len() == self.rows && y.len() == self.cols, "dimension mismatch in bilinear");
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let g = &self[(i, j)];
                if !g.is_zero() && !yj.is_zero() {
                    acc += xi * g * yj;
                }
            }
        }
        acc
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<RMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = RMatrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &RMatrix::identity(n));
        let r = super::rref(&aug);
        if r.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return None;
        }
        Some(r.matrix.block(0, n, n, n))
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &RMatrix {
    type Output = RMatrix;
    fn add(self, rhs: &RMatrix) -> RMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in add");
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RMatrix {
    type Output = RMatrix;
    fn sub(self, rhs: &RMatrix) -> RMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in sub");
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RMatrix {
    type Output = RMatrix;
    fn mul(self, rhs: &RMatrix) -> RMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &RMatrix {
    type Output = RMatrix;
    fn neg(self) -> RMatrix {
        RMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dot product of two vectors.
pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    assert_eq!(x.len(), y.len(), "dimension mismatch in dot");
    x.iter().zip(y).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(x: &[Rational]) -> bool {
    x.iter().all(Rational::is_zero)
}

/// `a * x + y`.
pub fn axpy(a: &Rational, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

pub fn scale_vec(a: &Rational, x: &[Rational]) -> Vec<Rational> {
    x.iter().map(|xi| a * xi).collect()
}

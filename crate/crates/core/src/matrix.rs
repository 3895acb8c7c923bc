//! Dense matrices over exact rings.
//!
//! Everything in this crate uses the row-vector convention: a vector `v`
//! is transformed by `v * A`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::arith::{common_denominator, Q, Z};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ZMatrix = Matrix<Z>;
pub type QMatrix = Matrix<Q>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; all rows must share `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows_iter().map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn push_row(&mut self, r: Vec<T>) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r);
        self.rows += 1;
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
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

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

macro_rules! ring_ops {
    ($t:ty) => {
        impl Matrix<$t> {
            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.cols, other.rows, "matrix product shape");
                let mut out = Matrix::<$t>::zeros(self.rows, other.cols);
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

            /// Row vector times matrix.
            pub fn apply(&self, v: &[$t]) -> Vec<$t> {
                assert_eq!(v.len(), self.rows, "vector-matrix shape");
                let mut out = vec![<$t>::zero(); self.cols];
                for (k, a) in v.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..self.cols {
                        let b = &self[(k, j)];
                        if !b.is_zero() {
                            out[j] += a * b;
                        }
                    }
                }
                out
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!((self.rows, self.cols), (other.rows, other.cols));
                Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
            }

            pub fn sub(&self, other: &Self) -> Self {
                assert_eq!((self.rows, self.cols), (other.rows, other.cols));
                Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
            }

            pub fn scale(&self, c: &$t) -> Self {
                self.map(|x| x * c)
            }

            pub fn trace(&self) -> $t {
                (0..self.rows.min(self.cols)).fold(<$t>::zero(), |acc, i| acc + &self[(i, i)])
            }

            pub fn pow(&self, mut e: u64) -> Self {
                assert_eq!(self.rows, self.cols);
                let mut base = self.clone();
                let mut acc = Self::identity(self.rows);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul(&base);
                    }
                    base = base.mul(&base);
                    e >>= 1;
                }
                acc
            }
        }
    };
}

ring_ops!(Z);
ring_ops!(Q);

impl ZMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |i, j| Z::from(rows[i][j]))
    }

    pub fn to_q(&self) -> QMatrix {
        self.map(|x| Q::from_integer(x.clone()))
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> Z {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Z::one();
        }
        let mut a = self.clone();
        let mut sign = Z::one();
        let mut prev = Z::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Z::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

impl QMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        ZMatrix::from_i64(rows).to_q()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    /// Integer matrix, if every entry is integral.
    pub fn to_z(&self) -> Option<ZMatrix> {
        self.is_integral().then(|| self.map(|x| x.numer().clone()))
    }

    /// `(D, D*self)` with `D` the least common denominator.
    pub fn clear_denominators(&self) -> (Z, ZMatrix) {
        let d = common_denominator(self.data.iter());
        let dq = Q::from_integer(d.clone());
        (d, self.map(|x| (x * &dq).numer().clone()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        if !a[(r, j)].is_zero() {
                            let v = &a[(i, j)] - &f * &a[(r, j)];
                            a[(i, j)] = v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn row_space(&self) -> QMatrix {
        let (r, piv) = self.rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let (d, z) = self.clear_denominators();
        let n = self.rows as u32;
        Q::new(z.det(), num_traits::pow(d, n as usize))
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// Solves `x * self = b` for a row vector `x`, if a solution exists.
    pub fn solve_left(&self, b: &[Q]) -> Option<Vec<Q>> {
        // x A = b  <=>  A^T x^T = b^T
        let at = self.transpose();
        let n = at.rows;
        let m = at.cols;
        let aug = Matrix::from_fn(n, m + 1, |i, j| if j < m { at[(i, j)].clone() } else { b[i].clone() });
        let (r, piv) = aug.rref();
        if piv.last() == Some(&m) {
            return None;
        }
        let mut x = vec![Q::zero(); m];
        for (row, &c) in piv.iter().enumerate() {
            x[c] = r[(row, m)].clone();
        }
        Some(x)
    }

    /// Basis (as rows) of `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> QMatrix {
        let at = self.transpose();
        let (r, piv) = at.rref();
        let m = at.cols;
        let free: Vec<usize> = (0..m).filter(|c| !piv.contains(c)).collect();
        let mut out = QMatrix::zeros(free.len(), m);
        for (k, &f) in free.iter().enumerate() {
            out[(k, f)] = Q::one();
            for (row, &c) in piv.iter().enumerate() {
                out[(k, c)] = -r[(row, f)].clone();
            }
        }
        out
    }
}

pub fn q_vec_is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

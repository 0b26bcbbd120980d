//! Small dense matrices over the rationals.

use std::fmt;

use crate::rational::{RatVec, Rational};

/// Row-major `rows x cols` rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    /// Builds from row-major data. Panics if the length does not match.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        RatMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RatVec]) -> Self {
        let rows = cols.first().map_or(0, RatVec::dim);
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c[i]);
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

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_major(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> RatVec {
        RatVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> RatVec {
        RatVec((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        RatVec((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Rational::ZERO;
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col);
            det = det * p;
            for r in col + 1..n {
                let f = a.get(r, col) / p;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c) - f * a.get(col, c);
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| self.leading_minor(k).determinant().is_positive())
    }

    fn leading_minor(&self, k: usize) -> RatMatrix {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a.get(col, col).recip();
            for c in 0..n {
                a.set(col, c, a.get(col, c) * p);
                inv.set(col, c, inv.get(col, c) * p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, a.get(r, c) - f * a.get(col, c));
                    inv.set(r, c, inv.get(r, c) - f * inv.get(col, c));
                }
            }
        }
        Some(inv)
    }

    /// Basis of `{x : self * x = 0}` from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a.get(row, col).recip();
            for c in 0..self.cols {
                a.set(row, c, a.get(row, c) * inv);
            }
            for r in 0..self.rows {
                if r != row {
                    let f = a.get(r, col);
                    if !f.is_zero() {
                        for c in 0..self.cols {
                            a.set(r, c, a.get(r, c) - f * a.get(row, c));
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = RatVec::zeros(self.cols);
                v.0[f] = Rational::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v.0[pc] = -a.get(r, f);
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for RatMatrix {
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
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, xs: &[i64]) -> RatMatrix {
        RatMatrix::from_row_major(rows, cols, xs.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(a.determinant(), Rational::from(6));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
        let singular = m(2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.determinant(), Rational::ZERO);
    }

    #[test]
    fn positive_definite() {
        assert!(m(2, 2, &[2, 1, 1, 2]).is_positive_definite());
        assert!(!m(2, 2, &[1, 2, 2, 1]).is_positive_definite());
        assert!(!m(2, 2, &[1, 0, 1, 1]).is_positive_definite());
    }

    #[test]
    fn nullspace_of_row() {
        let a = m(1, 3, &[1, 2, 3]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).is_zero());
        }
        assert!(m(2, 2, &[1, 0, 0, 1]).nullspace().is_empty());
    }
}

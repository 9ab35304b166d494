//! Dense arbitrary-precision integer matrices, just enough for boundary
//! operators and Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += c * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let add = c * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += c * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let add = c * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }

    /// Rank over Q by fraction-free elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            for r in row + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let a = m[(row, col)].clone();
                let b = m[(r, col)].clone();
                for j in col..m.cols {
                    let v = &a * &m[(r, j)] - &b * &m[(row, j)];
                    m[(r, j)] = v;
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Determinant by Bareiss fraction-free elimination (square matrices).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[(r, k)].is_zero());
                match swap {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_rank() {
        let m = IntegerMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(m.det(), BigInt::from(6));
        assert_eq!(m.rank(), 2);
        let s = IntegerMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(), BigInt::zero());
        assert_eq!(s.rank(), 1);
    }
}

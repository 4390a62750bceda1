//! Dense rational matrices and vectors (small sizes, exact arithmetic).

use crate::rat::{rat, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub type QVec = Vec<Rat>;

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>, // rows * cols entries, row-major
}

pub fn qvec_from_i64(v: &[i64]) -> QVec {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn qvec_zero(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn qvec_add(a: &[Rat], b: &[Rat]) -> QVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qvec_sub(a: &[Rat], b: &[Rat]) -> QVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qvec_neg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn qvec_scale(c: &Rat, a: &[Rat]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn qvec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn qvec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Build from integer rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = QMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = rat(x);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<QVec>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        QMat { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| qvec_dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == QMat::identity(self.rows)
    }

    /// Determinant by fraction-free-ish Gaussian elimination (exact).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &m[(r, col)] / &p;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let t = &f * &m[(col, c)];
                    m[(r, c)] -= t;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    /// Exact inverse; `None` if singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero())?;
            m.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &m[(col, j)];
                    m[(r, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Solve `self * x = b`. Returns `(particular, kernel_basis)` or `None`
    /// when inconsistent. The kernel basis spans all homogeneous solutions.
    pub fn solve(&self, b: &[Rat]) -> Option<(QVec, Vec<QVec>)> {
        assert_eq!(self.rows, b.len());
        let (rows, cols) = (self.rows, self.cols);
        // augmented row reduction
        let mut m = self.clone();
        let mut rhs: QVec = b.to_vec();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut row = 0;
        for col in 0..cols {
            let pr = (row..rows).find(|&r| !m[(r, col)].is_zero());
            let pr = match pr {
                Some(p) => p,
                None => continue,
            };
            m.swap_rows(pr, row);
            rhs.swap(pr, row);
            let p = m[(row, col)].clone();
            for j in 0..cols {
                m[(row, j)] /= &p;
            }
            rhs[row] /= &p;
            for r in 0..rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in 0..cols {
                    let t = &f * &m[(row, j)];
                    m[(r, j)] -= t;
                }
                let t = &f * &rhs[row];
                rhs[r] -= t;
            }
            pivots.push((row, col));
            row += 1;
            if row == rows {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        for r in row..rows {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut particular = qvec_zero(cols);
        for &(r, c) in &pivots {
            particular[c] = rhs[r].clone();
        }
        let mut kernel = Vec::new();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut k = qvec_zero(cols);
            k[free] = Rat::one();
            for &(r, c) in &pivots {
                k[c] = -m[(r, free)].clone();
            }
            kernel.push(k);
        }
        Some((particular, kernel))
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn det_and_inverse() {
        let m = QMat::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), rat(1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());

        let s = QMat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), rat(0));
        assert!(s.inverse().is_none());
    }

    #[test]
    fn solve_with_kernel() {
        // x + y + z = 3, rank 1 in 3 vars: kernel dim 2
        let m = QMat::from_i64_rows(&[&[1, 1, 1]]);
        let (p, k) = m.solve(&qvec_from_i64(&[3])).unwrap();
        assert_eq!(qvec_dot(&qvec_from_i64(&[1, 1, 1]), &p), rat(3));
        assert_eq!(k.len(), 2);
        for kv in &k {
            assert_eq!(qvec_dot(&qvec_from_i64(&[1, 1, 1]), kv), rat(0));
        }
        // inconsistent
        let m2 = QMat::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(m2.solve(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn rational_entries() {
        let mut m = QMat::identity(2);
        m[(0, 1)] = ratio(1, 2);
        let inv = m.inverse().unwrap();
        assert_eq!(inv[(0, 1)], ratio(-1, 2));
    }
}

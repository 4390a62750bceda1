//! Integer matrix normal forms: Hermite and Smith, with transform tracking.
//!
//! Sizes here are tiny (ambient dimension at most 4), so plain `i64`
//! arithmetic is ample; entries stay far from overflow.

use serde::{Deserialize, Serialize};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        IMat { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        // Bareiss would be overkill at these sizes; do rational elimination.
        use crate::qmat::QMat;
        let q = QMat::from_i64_rows(&self.data.chunks(self.cols).collect::<Vec<_>>());
        let d = q.det();
        crate::rat::to_i64(&d)
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

    fn add_row_multiple(&mut self, target: usize, source: usize, k: i64) {
        for j in 0..self.cols {
            self[(target, j)] += k * self[(source, j)];
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form of the row space of `m`.
///
/// The result's nonzero rows form the canonical basis of the lattice
/// generated by the rows of `m`: row-echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(m: &IMat) -> IMat {
    let mut w = m.clone();
    let (rows, cols) = (w.rows, w.cols);
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        // Euclidean elimination in this column below `row`
        loop {
            let mut best: Option<usize> = None;
            for r in row..rows {
                if w[(r, col)] != 0 {
                    best = match best {
                        None => Some(r),
                        Some(b) if w[(r, col)].abs() < w[(b, col)].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let b = match best {
                Some(b) => b,
                None => break,
            };
            w.swap_rows(row, b);
            let p = w[(row, col)];
            let mut done = true;
            for r in row + 1..rows {
                if w[(r, col)] != 0 {
                    let q = w[(r, col)].div_euclid(p);
                    w.add_row_multiple(r, row, -q);
                    if w[(r, col)] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if w[(row, col)] == 0 {
            continue;
        }
        if w[(row, col)] < 0 {
            w.negate_row(row);
        }
        let p = w[(row, col)];
        for r in 0..row {
            let q = w[(r, col)].div_euclid(p);
            w.add_row_multiple(r, row, -q);
        }
        row += 1;
    }
    IMat::from_rows(&(0..row).map(|r| w.row(r).to_vec()).collect::<Vec<_>>())
}

/// Smith normal form `s = u * m * v` with unimodular `u`, `v`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub s: IMat,
    pub u: IMat,
    pub v: IMat,
}

impl SmithDecomposition {
    /// Diagonal entries (including zeros up to min(rows, cols)).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)]).collect()
    }

    /// Nonzero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&d| d != 0).collect()
    }
}

pub fn smith_normal_form(m: &IMat) -> SmithDecomposition {
    let mut s = m.clone();
    let mut u = IMat::identity(m.rows);
    let mut v = IMat::identity(m.cols);
    let n = m.rows.min(m.cols);

    // column ops on s are row ops on v^T; keep v as matrix and operate on columns
    fn swap_cols(m: &mut IMat, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..m.rows {
            let c = m.cols;
            m.data.swap(i * c + a, i * c + b);
        }
    }
    fn add_col_multiple(m: &mut IMat, target: usize, source: usize, k: i64) {
        for i in 0..m.rows {
            let t = k * m[(i, source)];
            m[(i, target)] += t;
        }
    }

    let mut t = 0;
    while t < n {
        // find a nonzero entry in the remaining block
        let mut pivot = None;
        'search: for i in t..s.rows {
            for j in t..s.cols {
                if s[(i, j)] != 0 {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        swap_cols(&mut s, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            // clear column t
            let mut clean = true;
            for i in t + 1..s.rows {
                if s[(i, t)] != 0 {
                    if s[(t, t)] == 0 || s[(i, t)].abs() < s[(t, t)].abs() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                    let q = s[(i, t)].div_euclid(s[(t, t)]);
                    s.add_row_multiple(i, t, -q);
                    u.add_row_multiple(i, t, -q);
                    if s[(i, t)] != 0 {
                        clean = false;
                    }
                }
            }
            // clear row t
            for j in t + 1..s.cols {
                if s[(t, j)] != 0 {
                    if s[(t, t)] == 0 || s[(t, j)].abs() < s[(t, t)].abs() {
                        swap_cols(&mut s, t, j);
                        swap_cols(&mut v, t, j);
                    }
                    let q = s[(t, j)].div_euclid(s[(t, t)]);
                    add_col_multiple(&mut s, j, t, -q);
                    add_col_multiple(&mut v, j, t, -q);
                    if s[(t, j)] != 0 {
                        clean = false;
                    }
                }
            }
            if clean
                && (t + 1..s.rows).all(|i| s[(i, t)] == 0)
                && (t + 1..s.cols).all(|j| s[(t, j)] == 0)
            {
                break;
            }
        }
        if s[(t, t)] < 0 {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    // divisibility chain: ensure s[i,i] | s[i+1,i+1]
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (s[(i, i)], s[(i + 1, i + 1)]);
            if a != 0 && b != 0 && b % a != 0 {
                // classic trick: add col i+1 to col i, re-reduce the 2x2 block
                add_col_multiple(&mut s, i, i + 1, 1);
                add_col_multiple(&mut v, i, i + 1, 1);
                // now clear with row/col ops
                loop {
                    if s[(i + 1, i)] == 0 {
                        break;
                    }
                    if s[(i, i)] == 0 || s[(i + 1, i)].abs() < s[(i, i)].abs() {
                        s.swap_rows(i, i + 1);
                        u.swap_rows(i, i + 1);
                    }
                    let q = s[(i + 1, i)].div_euclid(s[(i, i)]);
                    s.add_row_multiple(i + 1, i, -q);
                    u.add_row_multiple(i + 1, i, -q);
                }
                loop {
                    if s[(i, i + 1)] == 0 {
                        break;
                    }
                    if s[(i, i)] == 0 || s[(i, i + 1)].abs() < s[(i, i)].abs() {
                        swap_cols(&mut s, i, i + 1);
                        swap_cols(&mut v, i, i + 1);
                    }
                    let q = s[(i, i + 1)].div_euclid(s[(i, i)]);
                    add_col_multiple(&mut s, i + 1, i, -q);
                    add_col_multiple(&mut v, i + 1, i, -q);
                }
                if s[(i, i)] < 0 {
                    s.negate_row(i);
                    u.negate_row(i);
                }
                if s[(i + 1, i + 1)] < 0 {
                    s.negate_row(i + 1);
                    u.negate_row(i + 1);
                }
                changed = true;
            }
        }
    }
    SmithDecomposition { s, u, v }
}

/// Solve `m x = b` over the integers.
///
/// Returns `(particular, kernel_basis)` where the kernel basis generates all
/// integer homogeneous solutions, or `None` when no integer solution exists.
pub fn solve_integer(m: &IMat, b: &[i64]) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    assert_eq!(m.rows, b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let n = m.rows.min(m.cols);
    let mut y = vec![0i64; m.cols];
    for i in 0..m.rows {
        let d = if i < n { snf.s[(i, i)] } else { 0 };
        if d == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % d != 0 {
                return None;
            }
            y[i] = ub[i] / d;
        }
    }
    let x = snf.v.mul_vec(&y);
    let mut kernel = Vec::new();
    for j in 0..m.cols {
        let free = j >= n || snf.s[(j, j)] == 0;
        if free {
            kernel.push((0..m.cols).map(|i| snf.v[(i, j)]).collect());
        }
    }
    Some((x, kernel))
}

/// Integer kernel basis of `m` (saturated sublattice of Z^cols).
pub fn integer_kernel(m: &IMat) -> Vec<Vec<i64>> {
    solve_integer(m, &vec![0; m.rows]).expect("homogeneous system is solvable").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_canonical() {
        // two generating sets of the same lattice
        let a = IMat::from_rows(&[vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, -1]]);
        let b = IMat::from_rows(&[vec![1, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, -1]]);
        let ha = hermite_rows(&a);
        let hb = hermite_rows(&IMat::from_rows(&[
            vec![1, 1, -1],
            vec![2, 0, 0],
            vec![0, 2, 0],
        ]));
        assert_eq!(ha, hb);
        assert_ne!(ha, hermite_rows(&b)); // b generates a strictly larger lattice
    }

    #[test]
    fn smith_reproduces_matrix() {
        let m = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        assert_eq!(snf.u.det().abs(), 1);
        assert_eq!(snf.v.det().abs(), 1);
        // d1 = gcd of entries = 2, d1*d2 = gcd of 2x2 minors = 4, product = |det| = 624
        assert_eq!(snf.elementary_divisors(), vec![2, 2, 156]);
        // divisibility chain
        let d = snf.elementary_divisors();
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn integer_solver() {
        // 2x = 4 solvable, 2x = 3 not
        let m = IMat::from_rows(&[vec![2]]);
        assert_eq!(solve_integer(&m, &[4]).unwrap().0, vec![2]);
        assert!(solve_integer(&m, &[3]).is_none());
        // underdetermined with kernel
        let m = IMat::from_rows(&[vec![1, 2, 3]]);
        let (x, k) = solve_integer(&m, &[6]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![6]);
        assert_eq!(k.len(), 2);
        for kv in &k {
            assert_eq!(m.mul_vec(kv), vec![0]);
        }
    }
}

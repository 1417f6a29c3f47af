//! Exact integer linear algebra: Smith normal form with transforms, integral
//! solving, kernels and determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += a * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(&self.data[i]) {
                *o += a * m;
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix::from_rows(self.cols, data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            if !self.data[src][j].is_zero() {
                let d = f * &self.data[src][j];
                self.data[dst][j] += d;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[src].is_zero() {
                let d = f * &row[src];
                row[dst] += d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -std::mem::take(v);
        }
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` where `d` is
/// diagonal with `diag[0] | diag[1] | ...` and all entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t, t..m, t..n) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d.data[i][t].is_zero() {
                    continue;
                }
                let q = -d.data[i][t].div_floor(&d.data[t][t]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.data[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.data[t][j].is_zero() {
                    continue;
                }
                let q = -d.data[t][j].div_floor(&d.data[t][t]);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.data[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = min_abs_in_cross(&d, t, m, n);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = d.data[t][t].clone();
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.data[i][j].is_zero() && !d.data[i][j].is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let rank = t;
    let diag = (0..m.min(n)).map(|i| d.data[i][i].clone()).collect();
    Smith { diag, rank, u, v }
}

fn min_abs_entry(
    d: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &d.data[i][j];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.data[bi][bj].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn min_abs_in_cross(d: &IntMatrix, t: usize, m: usize, n: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t + 1..m {
        if !d.data[i][t].is_zero() && d.data[i][t].abs() < d.data[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t + 1..n {
        if !d.data[t][j].is_zero() && d.data[t][j].abs() < d.data[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}

/// Finds an integer `x` with `a * x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows);
    let s = smith(a);
    solve_with(&s, a.cols, b)
}

/// Integral solve reusing a precomputed Smith form of the coefficient matrix.
pub fn solve_with(s: &Smith, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.apply(b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = c.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(s.v.apply(&y))
}

/// Basis of the saturated lattice of row vectors `y` with `y * a = 0`.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let rows = (s.rank..a.rows).map(|i| s.u.row(i).to_vec()).collect();
    IntMatrix::from_rows(a.rows, rows)
}

/// Basis (as rows) of the lattice of column vectors `x` with `a * x = 0`.
pub fn right_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let vt = s.v.transpose();
    let rows = (s.rank..a.cols).map(|j| vt.row(j).to_vec()).collect();
    IntMatrix::from_rows(a.cols, rows)
}

/// Invariant factors of `Z^cols / rowspan(a)`: the non-unit Smith diagonal
/// entries followed by zeros for each free summand.
pub fn cokernel_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let s = smith(a);
    let mut out: Vec<BigInt> = s.diag[..s.rank]
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), a.cols - s.rank));
    out
}

pub fn rank(a: &IntMatrix) -> usize {
    smith(a).rank
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows, a.cols, "determinant of non-square matrix");
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_smith(a: &IntMatrix) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i == j && i < s.diag.len() {
                    assert_eq!(d.get(i, j), &s.diag[i]);
                } else {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        for w in s.diag[..s.rank].windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(det(&s.u).abs().is_one());
        assert!(det(&s.v).abs().is_one());
    }

    #[test]
    fn smith_of_small_matrices() {
        let a = IntMatrix::from_i64_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check_smith(&a);
        assert_eq!(smith(&a).diag, bi(&[2, 6, 12]));
        let b = IntMatrix::from_i64_rows(2, &[vec![4, 0], vec![0, 6], vec![0, 0]]);
        check_smith(&b);
        assert_eq!(smith(&b).diag, bi(&[2, 12]));
        check_smith(&IntMatrix::zeros(2, 3));
    }

    #[test]
    fn solving_and_kernels() {
        let a = IntMatrix::from_i64_rows(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve(&a, &bi(&[4, 9])), Some(bi(&[2, 3])));
        assert_eq!(solve(&a, &bi(&[1, 0])), None);
        let k = IntMatrix::from_i64_rows(3, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let lk = left_kernel(&k);
        assert_eq!(lk.rows(), 1);
        assert!(lk.mul(&k).row(0).iter().all(|x| x.is_zero()));
        let rk = right_kernel(&k);
        assert_eq!(rk.rows(), 2);
        assert!(k.mul(&rk.transpose()).row_vecs().iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn determinants() {
        let a = IntMatrix::from_i64_rows(3, &[vec![0, 2, 1], vec![1, 1, 1], vec![3, 0, 2]]);
        assert_eq!(det(&a), BigInt::from(-1));
        let s = IntMatrix::from_i64_rows(2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(det(&s), BigInt::zero());
        assert_eq!(cokernel_invariants(&IntMatrix::from_i64_rows(3, &[vec![2, 0, 0]])), bi(&[2, 0, 0]));
    }
}

//! Dense integer matrices and the Smith normal form.
//!
//! Matrices act on row vectors: a map `Z^m -> Z^n` is an `m x n` matrix `F`
//! and sends `x` to `x F`. Relations of a presentation are rows.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::scalar::IntScalar;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| T::of(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.row(i).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
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

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(self.cols, idx.iter().map(|&i| self.row_vec(i)).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.rows, "vector length mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o = o.clone() + xi.clone() * a.clone();
                }
            }
        }
        out
    }

    pub fn map<U: IntScalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Reduces column `j` modulo `moduli[j]` (0 leaves the column alone).
    pub fn reduce_cols(&mut self, moduli: &[T]) {
        assert_eq!(moduli.len(), self.cols);
        for i in 0..self.rows {
            for (j, m) in moduli.iter().enumerate() {
                let v = self[(i, j)].reduce(m);
                self[(i, j)] = v;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)].clone();
            if !v.is_zero() {
                self[(dst, j)] = self[(dst, j)].clone() + c.clone() * v;
            }
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].clone();
            if !v.is_zero() {
                self[(i, dst)] = self[(i, dst)].clone() + c.clone() * v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)].clone();
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: IntScalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
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
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ... | d_r`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: IntScalar> Snf<T> {
    /// Nonzero diagonal entries.
    pub fn factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Diagonal padded with zeros to the number of columns: the orders of the
    /// cyclic summands of the cokernel `Z^cols / rowspace(A)`.
    pub fn cokernel_orders(&self) -> Vec<T> {
        let mut out = self.factors();
        out.resize(self.d.cols(), T::zero());
        out
    }

    /// An integer solution of `x A = b`, if one exists.
    pub fn solve_left(&self, b: &[T]) -> Option<Vec<T>> {
        let bv = self.v.apply(b);
        let mut w = vec![T::zero(); self.u.rows()];
        for (j, c) in bv.iter().enumerate() {
            if j < self.rank {
                let dj = &self.d[(j, j)];
                if !(c.clone() % dj.clone()).is_zero() {
                    return None;
                }
                w[j] = c.clone() / dj.clone();
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.u.apply(&w))
    }

    /// Basis (as rows) of the left kernel `{x : x A = 0}`.
    pub fn left_kernel(&self) -> Matrix<T> {
        let idx: Vec<usize> = (self.rank..self.u.rows()).collect();
        self.u.select_rows(&idx)
    }
}

pub fn smith_normal_form<T: IntScalar>(a: &Matrix<T>) -> Snf<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut v_inv = Matrix::identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { u, d, v, v_inv, rank };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(d[(i, t)].clone() / p.clone());
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(d[(t, j)].clone() / p.clone());
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                // inverse of col_j += q col_t is row_t -= q row_j
                v_inv.add_row(t, j, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(d[(i, j)].clone() % p.clone()).is_zero())
            });
            if let Some(i) = offender {
                d.add_row(t, i, &T::one());
                u.add_row(t, i, &T::one());
                continue;
            }
            if p.is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            rank = t + 1;
            break;
        }
    }
    Snf { u, d, v, v_inv, rank }
}

/// Invariant factors of `Z^cols / rowspace(a)`, units dropped:
/// torsion orders in divisibility order followed by a `0` per free summand.
pub fn invariant_factors<T: IntScalar>(a: &Matrix<T>) -> Vec<T> {
    smith_normal_form(a)
        .cokernel_orders()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check<T: IntScalar>(a: &Matrix<T>) {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d, "U A V != D for {a:?}");
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(&s.v * &s.v_inv, Matrix::identity(a.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.factors();
        for w in f.windows(2) {
            assert!((w[1].clone() % w[0].clone()).is_zero());
        }
        assert!(f.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn identity_is_fixed() {
        let a = Matrix::<i64>::identity(2);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, Matrix::identity(2));
        check(&a);
    }

    #[test]
    fn diag_2_3() {
        let a = Matrix::<i128>::from_i64_rows(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&a).factors(), vec![1, 6]);
        check(&a);
    }

    #[test]
    fn zero_one_by_one() {
        let a = Matrix::<i64>::from_i64_rows(1, &[vec![0]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 0);
        assert_eq!(s.cokernel_orders(), vec![0]);
    }

    #[test]
    fn bigint_agrees_with_i128() {
        let rows = vec![vec![6, 4, 8], vec![-3, 9, 12], vec![0, 5, -10], vec![2, 2, 2]];
        let a = Matrix::<i128>::from_i64_rows(3, &rows);
        let b = Matrix::<BigInt>::from_i64_rows(3, &rows);
        check(&a);
        check(&b);
        let fa: Vec<String> = smith_normal_form(&a).factors().iter().map(|x| x.to_string()).collect();
        let fb: Vec<String> = smith_normal_form(&b).factors().iter().map(|x| x.to_string()).collect();
        assert_eq!(fa, fb);
    }

    #[test]
    fn empty_shapes() {
        let a = Matrix::<i64>::zeros(0, 3);
        let s = smith_normal_form(&a);
        assert_eq!(s.cokernel_orders(), vec![0, 0, 0]);
        let b = Matrix::<i64>::zeros(2, 0);
        assert_eq!(smith_normal_form(&b).left_kernel().rows(), 2);
    }

    #[test]
    fn determinant_small() {
        let a = Matrix::<i64>::from_i64_rows(3, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(a.determinant(), 6);
    }
}

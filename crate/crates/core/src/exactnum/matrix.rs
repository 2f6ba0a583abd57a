use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat_int, Int, IntVec, Rational};
use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl LatticeMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(LatticeMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LatticeMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: &[IntVec], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(LatticeMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<IntVec> = rows.iter().map(|r| super::ivec(r)).collect();
        Self::from_rows(&vecs, cols).expect("ragged rows")
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[Int]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
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

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> IntVec {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &LatticeMatrix) -> Result<LatticeMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a * &rhs[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|r| super::dot_int(self.row(r), v)).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination; `None` unless square.
    pub fn det(&self) -> Option<Int> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Int::one());
        }
        let mut a: Vec<Vec<Int>> = self.row_vecs();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Some(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn diagonal_entries(&self) -> IntVec {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// Inverse of a unimodular matrix, `None` if the matrix is not unimodular.
    pub fn inverse_unimodular(&self) -> Option<LatticeMatrix> {
        let det = self.det()?;
        if det.abs() != Int::one() {
            return None;
        }
        let n = self.rows;
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|r| self.row(r).iter().map(rat_int).collect())
            .collect();
        let inv = super::linalg::inverse(&a)?;
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                debug_assert!(inv[r][c].is_integer());
                out[(r, c)] = inv[r][c].to_integer();
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for LatticeMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LatticeMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &LatticeMatrix {
    type Output = LatticeMatrix;
    fn mul(self, rhs: &LatticeMatrix) -> LatticeMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", super::display_int_vec(self.row(r)).replace('(', "[").replace(')', "]"))?;
        }
        write!(f, "]")
    }
}

/// `u · m · v = d` with `d` diagonal, `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: LatticeMatrix,
    pub d: LatticeMatrix,
    pub v: LatticeMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> IntVec {
        self.d.diagonal_entries()
    }

    /// Invariant factors other than 1, i.e. the cyclic orders of the torsion
    /// part of the cokernel (zeros indicate free summands and are dropped too).
    pub fn torsion_factors(&self) -> IntVec {
        self.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &LatticeMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = LatticeMatrix::identity(rows);
    let mut v = LatticeMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let p = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = Int::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_smith(u, d, v)
}

fn finish_smith(mut u: LatticeMatrix, mut d: LatticeMatrix, v: LatticeMatrix) -> SmithDecomposition {
    for t in 0..d.rows.min(d.cols) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

/// `u · m = h` with `h` in row-style Hermite normal form: echelon, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: LatticeMatrix,
    pub u: LatticeMatrix,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        (0..self.h.rows)
            .take_while(|&r| self.h.row(r).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Pivot columns, one per nonzero row.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|r| {
                self.h
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero row")
            })
            .collect()
    }
}

pub fn hermite_normal_form(m: &LatticeMatrix) -> HermiteDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut u = LatticeMatrix::identity(rows);
    let mut pr = 0;

    for col in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pr..rows {
                let x = &h[(i, col)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < h[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pr, b);
            u.swap_rows(pr, b);
            let mut done = true;
            for i in pr + 1..rows {
                let q = -h[(i, col)].div_floor(&h[(pr, col)]);
                h.add_row_multiple(i, pr, &q);
                u.add_row_multiple(i, pr, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let p = h[(pr, col)].clone();
        for i in 0..pr {
            let q = -h[(i, col)].div_floor(&p);
            h.add_row_multiple(i, pr, &q);
            u.add_row_multiple(i, pr, &q);
        }
        pr += 1;
    }
    HermiteDecomposition { h, u }
}

/// Integer solution of `a · x = b`, if one exists.
///
/// When the rational solution with free coordinates set to zero is already
/// integral it is returned; otherwise a lattice solution is built from the
/// Hermite form of `aᵀ`. Both choices are deterministic.
pub fn solve_integer(a: &LatticeMatrix, b: &[Int]) -> Option<IntVec> {
    assert_eq!(a.rows, b.len(), "right-hand side length mismatch");
    let ar: Vec<Vec<Rational>> = (0..a.rows)
        .map(|r| a.row(r).iter().map(rat_int).collect())
        .collect();
    let br: Vec<Rational> = b.iter().map(rat_int).collect();
    let sol = super::linalg::solve(&ar, &br, a.cols)?;
    if sol.iter().all(|x| x.is_integer()) {
        return Some(sol.iter().map(|x| x.to_integer()).collect());
    }
    // U aᵀ = H  =>  a Uᵀ = Hᵀ; put x = Uᵀ y and solve Hᵀ y = b by forward substitution.
    let hnf = hermite_normal_form(&a.transpose());
    let pivots = hnf.pivot_columns();
    let mut y = vec![Int::zero(); a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        let mut rhs = b[pc].clone();
        for (k, yk) in y.iter().enumerate().take(i) {
            rhs -= &hnf.h[(k, pc)] * yk;
        }
        let p = &hnf.h[(i, pc)];
        if !rhs.is_multiple_of(p) {
            return None;
        }
        y[i] = rhs / p;
    }
    let x = hnf.u.transpose().mul_vec(&y);
    if a.mul_vec(&x) == b {
        Some(x)
    } else {
        None
    }
}

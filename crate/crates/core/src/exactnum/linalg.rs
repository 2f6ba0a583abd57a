//! Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::{RatVec, Rational};

/// Reduced row echelon form. Returns the reduced rows and the pivot columns.
pub fn rref(rows: &[RatVec], ncols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut a: Vec<RatVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..ncols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(rows: &[RatVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// A solution of `a · x = b` with every free coordinate set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(a: &[RatVec], b: &[Rational], ncols: usize) -> Option<RatVec> {
    let aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = red[r][ncols].clone();
    }
    Some(x)
}

/// Unique solution of a square nonsingular system.
pub fn solve_square(a: &[RatVec], b: &[Rational]) -> Option<RatVec> {
    let n = a.len();
    let aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.last() == Some(&n) {
        return None;
    }
    Some(red.into_iter().map(|row| row[n].clone()).collect())
}

/// Basis of `{x : a · x = 0}`, one vector per free column (that coordinate 1,
/// other free coordinates 0).
pub fn nullspace(a: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let (red, pivots) = rref(a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(a: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = a.len();
    let aug: Vec<RatVec> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{dot_rat, rat, rvec};

    #[test]
    fn solves_and_ranks() {
        let a = vec![rvec(&[1, 1, -1]), rvec(&[1, -1, 1]), rvec(&[-1, 1, 1])];
        assert_eq!(rank(&a, 3), 3);
        let x = solve_square(&a, &rvec(&[1, 1, 1])).unwrap();
        assert_eq!(x, rvec(&[1, 1, 1]));
        let singular = vec![rvec(&[1, 2]), rvec(&[2, 4])];
        assert!(solve_square(&singular, &rvec(&[1, 1])).is_none());
        assert_eq!(rank(&singular, 2), 1);
    }

    #[test]
    fn underdetermined_solution_zeroes_free_coordinates() {
        let a = vec![rvec(&[2, -1, 0]), rvec(&[0, 1, 0])];
        assert_eq!(solve(&a, &rvec(&[1, 1]), 3).unwrap(), rvec(&[1, 1, 0]));
        let inconsistent = vec![rvec(&[1, 0]), rvec(&[1, 0])];
        assert!(solve(&inconsistent, &rvec(&[0, 1]), 2).is_none());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = vec![rvec(&[1, -1, 1]), rvec(&[-1, 1, 1])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert_eq!(dot_rat(row, &ns[0]), rat(0, 1));
        }
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![rvec(&[2, 1]), rvec(&[1, 1])];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![rvec(&[1, -1]), rvec(&[-1, 2])]);
        assert!(inverse(&[rvec(&[1, 1]), rvec(&[1, 1])]).is_none());
    }
}

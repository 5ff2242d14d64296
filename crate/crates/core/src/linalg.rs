//! Small exact linear-algebra helpers over `BigInt` / `BigRational`.
//!
//! Matrices are row-major `Vec<Vec<_>>` unless a function says otherwise.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(rows: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    rows.iter().map(|r| dot(r, x)).collect()
}

/// Gram matrix `G[i][j] = ⟨c_i, c_j⟩` of a list of columns.
pub fn gram(columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let s = columns.len();
    let mut g = alloc::vec![alloc::vec![BigInt::zero(); s]; s];
    for i in 0..s {
        for j in i..s {
            let v = dot(&columns[i], &columns[j]);
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    g
}

/// Transpose between row-major and column-major views.
pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
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
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix (any shape).
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let g = a[r][c].clone();
            for j in c..cols {
                a[i][j] = &a[i][j] * &g - &a[r][j] * &f;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves the square system `M y = b` exactly; `None` when `M` is singular.
pub fn solve(m: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .chain(core::iter::once(bi))
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        let pivot = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Least-squares style membership test: returns integer coefficients `y` with
/// `Σ y_j c_j = v` when `v` lies in the lattice spanned by the independent
/// `columns`, `None` otherwise.
pub fn lattice_coordinates(columns: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = gram(columns);
    let rhs: Vec<BigInt> = columns.iter().map(|c| dot(c, v)).collect();
    let y = solve(&g, &rhs)?;
    if !y.iter().all(|q| q.is_integer()) {
        return None;
    }
    let y: Vec<BigInt> = y.into_iter().map(|q| q.to_integer()).collect();
    let mut back = alloc::vec![BigInt::zero(); v.len()];
    for (c, yj) in columns.iter().zip(&y) {
        for (b, ci) in back.iter_mut().zip(c) {
            *b += ci * yj;
        }
    }
    (back == v).then_some(y)
}

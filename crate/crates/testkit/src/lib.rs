//! Slow, independent oracles for the test suites: Hermite normal forms,
//! integer kernels by unimodular row elimination, and brute-force searches.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Row-style Hermite normal form of the lattice generated by `rows`: echelon
/// form with positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped. Two generating sets span the same lattice
/// iff their forms are equal.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Matrix {
    echelon_with_transform(rows).0
}

/// Echelon form together with the unimodular transform `U` such that
/// `U · rows` equals the full (unreduced, zero-rows-kept) echelon matrix.
/// Returns `(hnf, full_echelon, U, rank)`.
fn echelon_with_transform(rows: &[Vec<BigInt>]) -> (Matrix, Matrix, Matrix, usize) {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut a: Matrix = rows.to_vec();
    let mut u: Matrix = (0..r)
        .map(|i| (0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if pivot_row == r {
            break;
        }
        // Euclid on column `col` among rows pivot_row.. until one nonzero remains.
        loop {
            let nz: Vec<usize> = (pivot_row..r).filter(|&i| !a[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    a.swap(i, pivot_row);
                    u.swap(i, pivot_row);
                }
                break;
            }
            let &p = nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = a[i][col].div_floor(&a[p][col]);
                let (rp, up) = (a[p].clone(), u[p].clone());
                for (x, y) in a[i].iter_mut().zip(&rp) {
                    *x -= &q * y;
                }
                for (x, y) in u[i].iter_mut().zip(&up) {
                    *x -= &q * y;
                }
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            a[pivot_row].iter_mut().for_each(|x| *x = -&*x);
            u[pivot_row].iter_mut().for_each(|x| *x = -&*x);
        }
        let piv = a[pivot_row][col].clone();
        for i in 0..pivot_row {
            let q = a[i][col].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            let (rp, up) = (a[pivot_row].clone(), u[pivot_row].clone());
            for (x, y) in a[i].iter_mut().zip(&rp) {
                *x -= &q * y;
            }
            for (x, y) in u[i].iter_mut().zip(&up) {
                *x -= &q * y;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    let hnf = a[..pivot_row].to_vec();
    (hnf, a, u, pivot_row)
}

/// Lattice equality of two generating sets (given as lists of vectors).
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    hermite_normal_form(a) == hermite_normal_form(b)
}

/// Whether `v` lies in the lattice generated by `gens`.
pub fn in_lattice(gens: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut ext = gens.to_vec();
    ext.push(v.to_vec());
    hermite_normal_form(gens) == hermite_normal_form(&ext)
}

/// A basis of `ker_Z(A)` (as vectors of length `n`) obtained from the unimodular
/// transform that brings the columns of `A` (as rows of `Aᵀ`) to echelon form.
pub fn integer_kernel(a_rows: &[Vec<BigInt>]) -> Matrix {
    let n = a_rows[0].len();
    let at: Matrix = (0..n).map(|j| a_rows.iter().map(|r| r[j].clone()).collect()).collect();
    let (_, full, u, rank) = echelon_with_transform(&at);
    debug_assert!(full[rank..].iter().all(|r| r.iter().all(Zero::is_zero)));
    u[rank..].to_vec()
}

/// Every binary `x` with `A x = b`.
pub fn binary_solutions(a_rows: &[Vec<BigInt>], b: &[BigInt]) -> Vec<Vec<u8>> {
    let n = a_rows[0].len();
    assert!(n <= 24, "brute-force binary enumeration is limited to n <= 24");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let x: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
        let ok = a_rows.iter().zip(b).all(|(row, bi)| {
            let s: BigInt = row.iter().zip(&x).filter(|(_, &xi)| xi == 1).map(|(a, _)| a).sum();
            &s == bi
        });
        if ok {
            out.push(x);
        }
    }
    out
}

/// Some integer `x` with every entry in `[-bound, bound]` and `A x = b`.
pub fn integer_solution_in_box(a_rows: &[Vec<BigInt>], b: &[BigInt], bound: i64) -> Option<Vec<BigInt>> {
    let n = a_rows[0].len();
    let mut x = vec![-bound; n];
    loop {
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let ok = a_rows
            .iter()
            .zip(b)
            .all(|(row, bi)| &row.iter().zip(&xb).map(|(a, v)| a * v).sum::<BigInt>() == bi);
        if ok {
            return Some(xb);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// Smallest squared norm of a nonzero combination `Σ z_j b_j` with every
/// `z_j ∈ [-bound, bound]`.
pub fn shortest_vector_norm_sq(basis: &[Vec<BigInt>], bound: i64) -> BigInt {
    let k = basis.len();
    let dim = basis[0].len();
    let mut z = vec![-bound; k];
    let mut best: Option<BigInt> = None;
    loop {
        if z.iter().any(|&v| v != 0) {
            let mut v = vec![BigInt::zero(); dim];
            for (zj, col) in z.iter().zip(basis) {
                if *zj != 0 {
                    for (vi, ci) in v.iter_mut().zip(col) {
                        *vi += ci * *zj;
                    }
                }
            }
            let nrm: BigInt = v.iter().map(|x| x * x).sum();
            if best.as_ref().is_none_or(|b| &nrm < b) {
                best = Some(nrm);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return best.expect("at least one nonzero combination");
            }
            if z[i] < bound {
                z[i] += 1;
                break;
            }
            z[i] = -bound;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_equivalent_bases() {
        let a = vec![ints(&[1, 2]), ints(&[3, 4])];
        let b = vec![ints(&[1, 2]), ints(&[2, 2])];
        assert!(same_lattice(&a, &b));
        assert!(!same_lattice(&a, &[ints(&[1, 0]), ints(&[0, 1])]));
        assert_eq!(hermite_normal_form(&a), vec![ints(&[1, 0]), ints(&[0, 2])]);
    }

    #[test]
    fn kernel_of_toy_row() {
        let k = integer_kernel(&[ints(&[3, 15, 6])]);
        assert_eq!(k.len(), 2);
        assert!(same_lattice(&k, &[ints(&[-2, 0, 1]), ints(&[-1, 1, -2])]));
    }

    #[test]
    fn brute_force_helpers() {
        assert_eq!(binary_solutions(&[ints(&[3, 15, 6])], &ints(&[9])), vec![vec![1, 0, 1]]);
        assert!(integer_solution_in_box(&[ints(&[2, 4])], &ints(&[3]), 5).is_none());
        assert!(integer_solution_in_box(&[ints(&[3, 5])], &ints(&[1]), 5).is_some());
        assert_eq!(shortest_vector_norm_sq(&[ints(&[1, 0]), ints(&[99, 1])], 200), BigInt::from(1));
    }
}

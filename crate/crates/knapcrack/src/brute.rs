//! Exhaustive binary solvers used to check attack results.

use std::collections::HashMap;

use knapcrack_core::problem::LdeSystem;
use knapcrack_core::BigInt;
use num_traits::Zero;

pub const FULL_ENUMERATION_LIMIT: usize = 20;
pub const MITM_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("brute force is limited to n <= {MITM_LIMIT} (got {0})")]
pub struct TooLarge(pub usize);

/// All `x ∈ {0,1}^n` with `A x = b`, in increasing order of the bitmask
/// `Σ x_i 2^i`.
pub fn brute_force_solve(sys: &LdeSystem) -> Result<Vec<Vec<u8>>, TooLarge> {
    let n = sys.n();
    if n > MITM_LIMIT {
        return Err(TooLarge(n));
    }
    let mut masks = if n <= FULL_ENUMERATION_LIMIT {
        enumerate(sys)
    } else {
        meet_in_the_middle(sys)
    };
    masks.sort_unstable();
    Ok(masks.into_iter().map(|m| (0..n).map(|i| ((m >> i) & 1) as u8).collect()).collect())
}

/// Column sums `Σ_{i ∈ mask} A_i` for every mask over `cols`, in mask order,
/// built incrementally from the lowest set bit.
fn subset_sums(cols: &[Vec<BigInt>], m: usize) -> Vec<Vec<BigInt>> {
    let k = cols.len();
    let mut sums: Vec<Vec<BigInt>> = Vec::with_capacity(1 << k);
    sums.push(vec![BigInt::zero(); m]);
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        let prev = &sums[mask & (mask - 1)];
        let s: Vec<BigInt> = prev.iter().zip(&cols[low]).map(|(a, b)| a + b).collect();
        sums.push(s);
    }
    sums
}

fn columns(sys: &LdeSystem) -> Vec<Vec<BigInt>> {
    (0..sys.n()).map(|j| sys.rows().iter().map(|r| r[j].clone()).collect()).collect()
}

fn enumerate(sys: &LdeSystem) -> Vec<u64> {
    let sums = subset_sums(&columns(sys), sys.m());
    sums.iter()
        .enumerate()
        .filter(|(_, s)| s.as_slice() == sys.rhs())
        .map(|(mask, _)| mask as u64)
        .collect()
}

fn meet_in_the_middle(sys: &LdeSystem) -> Vec<u64> {
    let cols = columns(sys);
    let half = cols.len() / 2;
    let left = subset_sums(&cols[..half], sys.m());
    let right = subset_sums(&cols[half..], sys.m());
    let mut index: HashMap<&[BigInt], Vec<usize>> = HashMap::new();
    for (mask, s) in left.iter().enumerate() {
        index.entry(s.as_slice()).or_default().push(mask);
    }
    let mut out = Vec::new();
    for (rmask, s) in right.iter().enumerate() {
        let need: Vec<BigInt> = sys.rhs().iter().zip(s).map(|(b, v)| b - v).collect();
        if let Some(ls) = index.get(need.as_slice()) {
            out.extend(ls.iter().map(|&l| (l as u64) | ((rmask as u64) << half)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_and_worked_examples() {
        let toy = LdeSystem::from_i64(&[&[3, 15, 6]], &[9]).unwrap();
        assert_eq!(brute_force_solve(&toy).unwrap(), vec![vec![1, 0, 1]]);
        let mh = LdeSystem::from_i64(&[&[171, 196, 457, 1191, 2410]], &[3797]).unwrap();
        assert_eq!(brute_force_solve(&mh).unwrap(), vec![vec![0, 1, 0, 1, 1]]);
        let two_row = LdeSystem::from_i64(&[&[63, 9, 34, 46, 2, 55], &[51, 19, 12, 44, 3, 25]], &[99, 66]).unwrap();
        assert!(brute_force_solve(&two_row).unwrap().contains(&vec![1, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn split_agrees_with_enumeration() {
        let g = crate::generate::generate_system(2, 16, 3).unwrap();
        let full = brute_force_solve(&g.system).unwrap();
        let mut mitm = meet_in_the_middle(&g.system);
        mitm.sort_unstable();
        let full_masks: Vec<u64> = full
            .iter()
            .map(|x| x.iter().enumerate().map(|(i, &b)| (b as u64) << i).sum())
            .collect();
        assert_eq!(mitm, full_masks);
        assert!(full.contains(&g.planted));
    }

    #[test]
    fn too_large() {
        let row: Vec<i64> = (1..=31).collect();
        let sys = LdeSystem::from_i64(&[&row], &[40]).unwrap();
        assert_eq!(brute_force_solve(&sys), Err(TooLarge(31)));
    }
}

//! Seeded random instances with a planted binary solution of weight `n/2`.

use knapcrack_core::problem::{log2, LdeSystem, SubsetSumInstance};
use knapcrack_core::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Resamples allowed per row before giving up.
pub const RESAMPLE_BUDGET: usize = 10_000;

/// Accepted open density band.
pub const DENSITY_BAND: (f64, f64) = (0.99, 1.01);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("n must be even with 4 <= n <= 120 (got {0})")]
    InvalidSize(usize),
    #[error("need 1 <= m < n (got m={m}, n={n})")]
    InvalidShape { m: usize, n: usize },
    #[error("no acceptable row after {RESAMPLE_BUDGET} resamples")]
    GenerationBudgetExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub system: LdeSystem,
    pub planted: Vec<u8>,
    /// Density of each row.
    pub densities: Vec<f64>,
    pub seed: u64,
}

pub fn row_density(row: &[BigInt]) -> f64 {
    row.len() as f64 / log2(row.iter().max().expect("non-empty row"))
}

fn check(m: usize, n: usize) -> Result<(), GenerateError> {
    if n < 4 || !n.is_multiple_of(2) || n > 120 {
        return Err(GenerateError::InvalidSize(n));
    }
    if m == 0 || m >= n {
        return Err(GenerateError::InvalidShape { m, n });
    }
    Ok(())
}

/// `m` rows of weights uniform on `[1, 2^n]`, one shared planted `x` with
/// `n/2` ones, and `b = A x`. Each row is redrawn until its density lies in
/// [`DENSITY_BAND`] and `max(A_i) < b_i ≤ Σ A_i / 2`.
pub fn generate_system(m: usize, n: usize, seed: u64) -> Result<Generated, GenerateError> {
    check(m, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    let mut planted = vec![0u8; n];
    for &i in &idx[..n / 2] {
        planted[i] = 1;
    }
    let hi = 1u128 << n;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut densities = Vec::with_capacity(m);
    for _ in 0..m {
        let mut accepted = None;
        for _ in 0..RESAMPLE_BUDGET {
            let row: Vec<u128> = (0..n).map(|_| rng.gen_range(1..=hi)).collect();
            let b: u128 = row.iter().zip(&planted).filter(|(_, &x)| x == 1).map(|(a, _)| a).sum();
            let max = *row.iter().max().unwrap();
            let sum: u128 = row.iter().sum();
            let row: Vec<BigInt> = row.into_iter().map(BigInt::from).collect();
            let density = row_density(&row);
            if density > DENSITY_BAND.0 && density < DENSITY_BAND.1 && b > max && 2 * b <= sum {
                accepted = Some((row, BigInt::from(b), density));
                break;
            }
        }
        let (row, b, density) = accepted.ok_or(GenerateError::GenerationBudgetExceeded)?;
        rows.push(row);
        rhs.push(b);
        densities.push(density);
    }
    let system = LdeSystem::new(rows, rhs).expect("random rows of a planted system have full rank");
    Ok(Generated {
        system,
        planted,
        densities,
        seed,
    })
}

/// Single-row case of [`generate_system`].
pub fn generate_instance(n: usize, seed: u64) -> Result<(SubsetSumInstance, Vec<u8>), GenerateError> {
    let g = generate_system(1, n, seed)?;
    let inst = SubsetSumInstance::new(g.system.rows()[0].clone(), g.system.rhs()[0].clone())
        .expect("generated rows satisfy the instance invariants");
    Ok((inst, g.planted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(generate_system(2, 16, 5).unwrap(), generate_system(2, 16, 5).unwrap());
        assert_ne!(generate_system(1, 16, 5).unwrap(), generate_system(1, 16, 6).unwrap());
    }

    #[test]
    fn planted_solution_and_constraints() {
        for seed in 0..20 {
            let (inst, x) = generate_instance(16, seed).unwrap();
            assert_eq!(x.iter().filter(|&&v| v == 1).count(), 8);
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            assert!(inst.is_solution(&xb));
            let d = inst.density();
            assert!(d > 0.99 && d < 1.01);
            assert!(inst.target() > inst.weights().iter().max().unwrap());
            assert!(inst.is_normalized());
        }
    }

    #[test]
    fn systems_share_the_planted_vector() {
        let g = generate_system(2, 30, 11).unwrap();
        let xb: Vec<BigInt> = g.planted.iter().map(|&v| BigInt::from(v)).collect();
        assert!(g.system.is_solution(&xb));
        for (row, b) in g.system.rows().iter().zip(g.system.rhs()) {
            assert!(b > row.iter().max().unwrap());
            assert!(BigInt::from(2) * b <= row.iter().sum::<BigInt>());
        }
    }

    #[test]
    fn size_checks() {
        assert_eq!(generate_instance(15, 0).unwrap_err(), GenerateError::InvalidSize(15));
        assert_eq!(generate_instance(2, 0).unwrap_err(), GenerateError::InvalidSize(2));
        assert!(matches!(generate_system(16, 16, 0), Err(GenerateError::InvalidShape { .. })));
    }
}

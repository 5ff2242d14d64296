//! Shortening a particular solution `x_b` against a kernel basis `D` by a
//! nearest-plane sweep over the Gram–Schmidt coordinates of `D`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{gso, LatticeBasis};
use crate::rounding::{round, Rounding};
use crate::{Error, Result};

/// `x_b − D·λ` with `λ` chosen from the last kernel column to the first.
pub fn reduce(x_b: &[BigInt], kernel: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    reduce_with(x_b, kernel, Rounding::HalfDown)
}

/// The same sweep applied to `2·x_b − 1` against `2·D`, mapped back by
/// `(y + 1)/2`; it centres the search on the cube `[0,1]^n` instead of the origin.
pub fn reduce_half(x_b: &[BigInt], kernel: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    reduce_half_with(x_b, kernel, Rounding::HalfDown)
}

pub fn reduce_with(x_b: &[BigInt], kernel: &[Vec<BigInt>], mode: Rounding) -> Result<Vec<BigInt>> {
    check_dims(x_b, kernel)?;
    sweep(x_b.to_vec(), kernel, mode)
}

pub fn reduce_half_with(x_b: &[BigInt], kernel: &[Vec<BigInt>], mode: Rounding) -> Result<Vec<BigInt>> {
    check_dims(x_b, kernel)?;
    let two = BigInt::from(2);
    let doubled: Vec<Vec<BigInt>> = kernel.iter().map(|c| c.iter().map(|v| v * &two).collect()).collect();
    let shifted: Vec<BigInt> = x_b.iter().map(|v| v * &two - 1).collect();
    let y = sweep(shifted, &doubled, mode)?;
    Ok(y.into_iter().map(|v| (v + 1) / &two).collect())
}

fn check_dims(x_b: &[BigInt], kernel: &[Vec<BigInt>]) -> Result<()> {
    if kernel.iter().any(|c| c.len() != x_b.len()) {
        return Err(Error::DimensionMismatch("kernel columns and x_b differ in length".into()));
    }
    Ok(())
}

fn sweep(mut x: Vec<BigInt>, kernel: &[Vec<BigInt>], mode: Rounding) -> Result<Vec<BigInt>> {
    if kernel.is_empty() {
        return Ok(x);
    }
    let g = gso(&LatticeBasis::from_columns(kernel.to_vec())?)?;
    let s = kernel.len();
    let xr: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut coords: Vec<BigRational> = (0..s)
        .map(|j| {
            let num = xr.iter().zip(&g.bstar[j]).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
            num / g.norm_sq(j)
        })
        .collect();
    for j in (0..s).rev() {
        let lambda = round(&coords[j], mode);
        if lambda.is_zero() {
            continue;
        }
        for (xi, di) in x.iter_mut().zip(&kernel[j]) {
            *xi -= &lambda * di;
        }
        let lr = BigRational::from_integer(lambda);
        for jj in 0..j {
            let delta = &lr * &g.mu[j][jj];
            coords[jj] -= delta;
        }
        coords[j] -= &lr * BigRational::one();
    }
    Ok(x)
}

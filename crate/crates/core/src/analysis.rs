//! Geometric features of a kernel basis `D` (columns `d_1, …, d_s`).
//!
//! Gram matrices are formed exactly; spectra and square roots are `f64`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::eigen::symmetric_eigenvalues;
use crate::linalg::{determinant, gram, rank};
use crate::{Error, Result};

fn check_rank(d: &[Vec<BigInt>]) -> Result<()> {
    if d.is_empty() || rank(d) != d.len() {
        return Err(Error::RankDeficient);
    }
    Ok(())
}

fn to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

fn gram_f64(d: &[Vec<BigInt>]) -> Vec<Vec<f64>> {
    gram(d).iter().map(|r| r.iter().map(to_f64).collect()).collect()
}

/// `√det(DᵀD)`.
pub fn lattice_volume(d: &[Vec<BigInt>]) -> Result<f64> {
    check_rank(d)?;
    let det = determinant(&gram(d));
    if !det.is_positive() {
        return Err(Error::RankDeficient);
    }
    Ok(libm::sqrt(to_f64(&det)))
}

/// An `s × s` matrix `S` (as columns) with `SᵀS = DᵀD`: the upper Cholesky
/// factor of the Gram matrix. Its columns have the same lengths and pairwise
/// angles as those of `D`.
pub fn project_preserving_gram(d: &[Vec<BigInt>]) -> Result<Vec<Vec<f64>>> {
    check_rank(d)?;
    let g = gram_f64(d);
    let s = g.len();
    let mut r = alloc::vec![alloc::vec![0.0f64; s]; s];
    for j in 0..s {
        for i in 0..=j {
            let acc: f64 = g[i][j] - (0..i).map(|k| r[k][i] * r[k][j]).sum::<f64>();
            if i == j {
                if acc <= 0.0 {
                    return Err(Error::RankDeficient);
                }
                r[i][j] = libm::sqrt(acc);
            } else {
                r[i][j] = acc / r[i][i];
            }
        }
    }
    Ok((0..s).map(|j| (0..s).map(|i| r[i][j]).collect()).collect())
}

/// Singular values of `D`, descending.
pub fn singular_values(d: &[Vec<BigInt>]) -> Result<Vec<f64>> {
    check_rank(d)?;
    Ok(symmetric_eigenvalues(&gram_f64(d)).into_iter().map(|e| libm::sqrt(e.max(0.0))).collect())
}

/// Volume of the unit ball in dimension `s`.
pub fn unit_ball_volume(s: usize) -> f64 {
    let h = s as f64 / 2.0;
    libm::pow(PI, h) / libm::tgamma(h + 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    /// Descending.
    pub semi_axes: Vec<f64>,
    pub volume: f64,
    pub center: Vec<f64>,
}

/// Minimum-volume ellipsoid containing the parallelepiped `{D z : z ∈ [0,1]^s}`.
///
/// The cube's minimal ellipsoid is its circumscribed ball of radius `√s/2`,
/// and minimal ellipsoids commute with affine maps, so the answer is the
/// image of that ball under `D`: semi-axes `(√s/2)·σ_i`.
pub fn min_volume_ellipsoid(d: &[Vec<BigInt>]) -> Result<Ellipsoid> {
    let sigma = singular_values(d)?;
    let s = sigma.len();
    let radius = libm::sqrt(s as f64) / 2.0;
    let semi_axes: Vec<f64> = sigma.iter().map(|x| radius * x).collect();
    let volume = semi_axes.iter().product::<f64>() * unit_ball_volume(s);
    let n = d[0].len();
    let center = (0..n).map(|i| d.iter().map(|c| to_f64(&c[i])).sum::<f64>() / 2.0).collect();
    Ok(Ellipsoid {
        semi_axes,
        volume,
        center,
    })
}

/// Ratio of minimal-ellipsoid volume to lattice volume in dimension `s`.
pub fn gamma(s: usize) -> f64 {
    let sf = s as f64;
    let h = sf / 2.0;
    libm::pow(sf, h) / libm::pow(2.0, sf - 1.0) / sf * libm::pow(PI, h) / libm::tgamma(h)
}

fn normalized_gram(d: &[Vec<BigInt>]) -> Vec<Vec<f64>> {
    let g = gram(d);
    let s = g.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if g[i][i].is_zero() || g[j][j].is_zero() {
                        0.0
                    } else {
                        to_f64(&g[i][j]) / libm::sqrt(to_f64(&g[i][i]) * to_f64(&g[j][j]))
                    }
                })
                .collect()
        })
        .collect()
}

/// Largest over smallest semi-axis of the minimal ellipsoid after scaling every
/// column of `D` to unit length.
pub fn lambda_tilde(d: &[Vec<BigInt>]) -> Result<f64> {
    check_rank(d)?;
    let ev = symmetric_eigenvalues(&normalized_gram(d));
    let max = ev[0];
    let min = ev[ev.len() - 1];
    if min <= 0.0 {
        return Err(Error::RankDeficient);
    }
    Ok(libm::sqrt(max / min))
}

/// Frobenius distance from `DᵀD` to the nearest diagonal matrix.
pub fn rect_distance(d: &[Vec<BigInt>]) -> f64 {
    let g = gram(d);
    let mut acc = BigInt::zero();
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                acc += v * v;
            }
        }
    }
    libm::sqrt(to_f64(&acc))
}

/// [`rect_distance`] for the column-normalized basis.
pub fn rect_distance_normalized(d: &[Vec<BigInt>]) -> f64 {
    let g = normalized_gram(d);
    let mut acc = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                acc += v * v;
            }
        }
    }
    libm::sqrt(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelFeatures {
    pub dim: usize,
    pub volume: f64,
    pub semi_axes: Vec<f64>,
    pub mve_volume: f64,
    pub lambda_tilde: f64,
    pub d: f64,
    pub d_tilde: f64,
    pub cut: bool,
    pub success: bool,
}

impl KernelFeatures {
    /// `mve_volume / (gamma(dim) · volume)`, which should be 1.
    pub fn gamma_check(&self) -> f64 {
        self.mve_volume / (gamma(self.dim) * self.volume)
    }
}

pub fn kernel_features(d: &[Vec<BigInt>], cut: bool, success: bool) -> Result<KernelFeatures> {
    let e = min_volume_ellipsoid(d)?;
    Ok(KernelFeatures {
        dim: d.len(),
        volume: lattice_volume(d)?,
        semi_axes: e.semi_axes,
        mve_volume: e.volume,
        lambda_tilde: lambda_tilde(d)?,
        d: rect_distance(d),
        d_tilde: rect_distance_normalized(d),
        cut,
        success,
    })
}

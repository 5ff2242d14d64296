//! The `[I; N·A]` formulation: LLL-reducing it splits off a reduced basis of
//! `ker_Z(A)` and a block from which a particular solution is read.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice::{lll, LatticeBasis};
use crate::linalg::{determinant, solve};
use crate::problem::LdeSystem;
use crate::{Error, Result};

/// The scale used unless a caller overrides it.
pub const DEFAULT_SCALE: u64 = 100_000_000;

/// Number of times [`decompose`] squares `N` before giving up.
pub const MAX_ESCALATIONS: usize = 4;

pub fn default_scale() -> BigInt {
    BigInt::from(DEFAULT_SCALE)
}

/// Columns `e_j` stacked on `N·A_j`, an `(n+m) × n` basis.
pub fn build_lattice_b(sys: &LdeSystem, scale: &BigInt) -> LatticeBasis {
    let (m, n) = (sys.m(), sys.n());
    let columns = (0..n)
        .map(|j| {
            let mut col = alloc::vec![BigInt::zero(); n + m];
            col[j] = BigInt::from(1);
            for i in 0..m {
                col[n + i] = scale * &sys.rows()[i][j];
            }
            col
        })
        .collect();
    LatticeBasis::from_columns(columns).expect("identity block keeps columns well formed")
}

/// Blocks of the reduced formulation matrix:
///
/// ```text
///   [ D   C  ]
///   [ 0  N·E ]
/// ```
///
/// `D` holds `n − m` kernel columns, `C` holds `m` columns with `A·C = E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    /// Kernel basis, as `n − m` columns of length `n`.
    pub d: Vec<Vec<BigInt>>,
    /// `m` columns of length `n`.
    pub c: Vec<Vec<BigInt>>,
    /// `m × m`, row-major.
    pub e: Vec<Vec<BigInt>>,
    pub scale_used: BigInt,
    pub escalations: usize,
}

impl KernelDecomposition {
    pub fn n(&self) -> usize {
        self.c.first().or(self.d.first()).map_or(0, Vec::len)
    }

    pub fn m(&self) -> usize {
        self.e.len()
    }

    /// `(D | C)` as a row-major `n × n` matrix.
    pub fn unimodular_part(&self) -> Vec<Vec<BigInt>> {
        let cols: Vec<&Vec<BigInt>> = self.d.iter().chain(&self.c).collect();
        (0..self.n())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }
}

/// Reduces `[I; N·A]` and splits it into [`KernelDecomposition`] blocks.
///
/// If the lower-left block is not zero after reduction, `N` is squared and the
/// run repeated (`N = 1` is first raised to 2), at most [`MAX_ESCALATIONS`] times. The `C`/`E` columns are
/// sign-normalized so the first nonzero entry of each `E` column is positive.
pub fn decompose(sys: &LdeSystem, scale: &BigInt, alpha: &BigRational) -> Result<KernelDecomposition> {
    if !scale.is_positive() {
        return Err(Error::InvalidProblem("scale N must be positive".into()));
    }
    let (m, n) = (sys.m(), sys.n());
    let s = n - m;
    let mut scale = scale.clone();
    for escalations in 0..=MAX_ESCALATIONS {
        let reduced = lll(&build_lattice_b(sys, &scale), alpha)?;
        let cols = reduced.columns();
        let zero_block = cols[..s].iter().all(|c| c[n..].iter().all(Zero::is_zero));
        if zero_block {
            let d: Vec<Vec<BigInt>> = cols[..s].iter().map(|c| c[..n].to_vec()).collect();
            let mut c: Vec<Vec<BigInt>> = cols[s..].iter().map(|c| c[..n].to_vec()).collect();
            let mut e_cols: Vec<Vec<BigInt>> = cols[s..].iter().map(|c| c[n..].iter().map(|v| v / &scale).collect()).collect();
            for (cc, ec) in c.iter_mut().zip(e_cols.iter_mut()) {
                let negative = ec.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
                if negative {
                    cc.iter_mut().chain(ec.iter_mut()).for_each(|v| *v = -&*v);
                }
            }
            let e: Vec<Vec<BigInt>> = (0..m).map(|i| e_cols.iter().map(|col| col[i].clone()).collect()).collect();
            if determinant(&e).is_zero() {
                return Err(Error::RankDeficient);
            }
            return Ok(KernelDecomposition {
                d,
                c,
                e,
                scale_used: scale,
                escalations,
            });
        }
        scale = if scale < BigInt::from(2) { BigInt::from(2) } else { &scale * &scale };
    }
    Err(Error::EscalationExhausted {
        escalations: MAX_ESCALATIONS,
    })
}

/// `C·E⁻¹·b` when `E⁻¹·b` is integral; `None` means `A x = b` has no integer
/// solution at all.
pub fn special_solution(kd: &KernelDecomposition, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != kd.m() {
        return Err(Error::DimensionMismatch("right-hand side length differs from m".into()));
    }
    let y = solve(&kd.e, b).ok_or(Error::SingularE)?;
    if !y.iter().all(BigRational::is_integer) {
        return Ok(None);
    }
    let mut x = alloc::vec![BigInt::zero(); kd.n()];
    for (col, yj) in kd.c.iter().zip(&y) {
        let yj = yj.to_integer();
        for (xi, ci) in x.iter_mut().zip(col) {
            *xi += ci * &yj;
        }
    }
    Ok(Some(x))
}

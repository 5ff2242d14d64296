//! Problem types: linear Diophantine systems `A x = b` and subset-sum instances.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// One equation `Σ a_i x_i = b`, borrowed from an instance or a system row.
#[derive(Debug, Clone, Copy)]
pub struct Equation<'a> {
    pub coeffs: &'a [BigInt],
    pub rhs: &'a BigInt,
}

impl Equation<'_> {
    /// `Σ a_i − b`, the right-hand side of the complemented equation.
    pub fn complement_rhs(&self) -> BigInt {
        self.coeffs.iter().sum::<BigInt>() - self.rhs
    }

    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        crate::linalg::dot(self.coeffs, x)
    }
}

/// `A x = b` with `A` an `m × n` integer matrix of full row rank, `1 ≤ m < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdeSystem {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
}

impl LdeSystem {
    pub fn new(rows: Vec<Vec<BigInt>>, rhs: Vec<BigInt>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidProblem("system has no equations".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows of A differ in length".into()));
        }
        if rhs.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "b has {} entries but A has {m} rows",
                rhs.len()
            )));
        }
        if n < 2 || m >= n {
            return Err(Error::InvalidProblem(format!("need 1 <= m < n and n >= 2, got m={m}, n={n}")));
        }
        if crate::linalg::rank(&rows) != m {
            return Err(Error::RankDeficient);
        }
        Ok(Self { rows, rhs })
    }

    pub fn from_i64(rows: &[&[i64]], rhs: &[i64]) -> Result<Self> {
        Self::new(rows.iter().map(|r| crate::ints(r)).collect(), crate::ints(rhs))
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.rhs
    }

    pub fn equation(&self, row: usize) -> Result<Equation<'_>> {
        if row >= self.m() {
            return Err(Error::InvalidRow(row));
        }
        Ok(Equation {
            coeffs: &self.rows[row],
            rhs: &self.rhs[row],
        })
    }

    pub fn evaluate(&self, x: &[BigInt]) -> Vec<BigInt> {
        crate::linalg::mat_vec(&self.rows, x)
    }

    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        x.len() == self.n() && self.evaluate(x) == self.rhs
    }

    /// The single-row system `y ↦ Σ a_i y_i = Σ a_i − b` satisfied by `y = 1 − x`.
    /// Only meaningful for `m = 1`.
    pub fn complement(&self) -> Option<Self> {
        if self.m() != 1 {
            return None;
        }
        let eq = self.equation(0).ok()?;
        Some(Self {
            rows: self.rows.clone(),
            rhs: alloc::vec![eq.complement_rhs()],
        })
    }
}

/// Subset-sum instance `Σ a_i x_i = b`, `x ∈ {0,1}^n`, with positive weights
/// and `0 < b < Σ a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumInstance {
    weights: Vec<BigInt>,
    target: BigInt,
}

impl SubsetSumInstance {
    pub fn new(weights: Vec<BigInt>, target: BigInt) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidProblem("need at least two weights".into()));
        }
        if weights.iter().any(|a| !a.is_positive()) {
            return Err(Error::InvalidProblem("weights must be positive".into()));
        }
        let total: BigInt = weights.iter().sum();
        if !target.is_positive() || target >= total {
            return Err(Error::InvalidProblem("target must satisfy 0 < b < sum(a)".into()));
        }
        Ok(Self { weights, target })
    }

    pub fn from_i64(weights: &[i64], target: i64) -> Result<Self> {
        Self::new(crate::ints(weights), BigInt::from(target))
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn target(&self) -> &BigInt {
        &self.target
    }

    pub fn total(&self) -> BigInt {
        self.weights.iter().sum()
    }

    /// `b̃ = Σ a_i − b`.
    pub fn complement_target(&self) -> BigInt {
        self.total() - &self.target
    }

    pub fn equation(&self) -> Equation<'_> {
        Equation {
            coeffs: &self.weights,
            rhs: &self.target,
        }
    }

    /// `b ≤ Σ a_i / 2`.
    pub fn is_normalized(&self) -> bool {
        BigInt::from(2) * &self.target <= self.total()
    }

    /// `n / log2(max a_i)`.
    pub fn density(&self) -> f64 {
        let max = self.weights.iter().max().expect("n >= 2");
        self.n() as f64 / log2(max)
    }

    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        x.len() == self.n()
            && x.iter().all(|v| v.is_zero() || v.is_one())
            && self.equation().evaluate(x) == self.target
    }

    /// The complemented instance with target `b̃`. Its solutions are `1 − x`.
    pub fn complement(&self) -> Self {
        Self {
            weights: self.weights.clone(),
            target: self.complement_target(),
        }
    }

    /// Replaces the instance by its complement when `b > Σ a_i / 2`.
    /// Returns the normalized instance and whether it was complemented.
    pub fn normalized(&self) -> (Self, bool) {
        if self.is_normalized() {
            (self.clone(), false)
        } else {
            (self.complement(), true)
        }
    }

    /// Indices whose weight exceeds the target, so `x_i = 0` in every solution.
    pub fn forced_zero(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.weights[i] > self.target).collect()
    }

    pub fn to_system(&self) -> LdeSystem {
        LdeSystem {
            rows: alloc::vec![self.weights.clone()],
            rhs: alloc::vec![self.target.clone()],
        }
    }
}

/// Maps a solution of the complemented problem back: `x_i = 1 − y_i`.
pub fn uncomplement(y: &[BigInt]) -> Vec<BigInt> {
    y.iter().map(|v| BigInt::one() - v).collect()
}

/// `log2` of a positive big integer as `f64`.
pub fn log2(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        libm::log2(v.to_f64().unwrap_or(f64::MAX))
    } else {
        let shift = bits - 64;
        let top: BigInt = v >> shift;
        libm::log2(top.to_f64().unwrap()) + shift as f64
    }
}

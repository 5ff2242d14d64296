//! The modular `(t, M)` transform of one equation and the extra equation it
//! contributes.
//!
//! For `r = t/M`, an equation `a·x = b` with binary solution `x` also satisfies
//! `v·x + k = w` with `v_i = ⌊a_i r⌋`, `w = ⌊b r⌋` and `0 ≤ k ≤ u_k`, where
//! `u_k = ⌊b̃ r⌋ + ⌊b r⌋ − Σ⌊a_i r⌋` and `b̃ = Σa − b`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::jumps::{has_jump_between, is_jump_point};
use crate::linalg::dot;
use crate::problem::{Equation, LdeSystem};
use crate::rounding::floor_mul;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisaggParams {
    t: BigInt,
    modulus: BigInt,
}

impl DisaggParams {
    pub fn new(t: BigInt, modulus: BigInt) -> Result<Self> {
        if !t.is_positive() || t >= modulus {
            return Err(Error::InvalidParams(format!("need 0 < t < M, got t={t}, M={modulus}")));
        }
        Ok(Self { t, modulus })
    }

    pub fn from_u64(t: u64, modulus: u64) -> Result<Self> {
        Self::new(t.into(), modulus.into())
    }

    pub fn t(&self) -> &BigInt {
        &self.t
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.t.clone(), self.modulus.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularImage {
    /// `t·a_i mod M`.
    pub c: Vec<BigInt>,
    /// `t·b mod M`.
    pub d: BigInt,
    /// `⌊t a_i / M⌋`.
    pub v: Vec<BigInt>,
    /// `⌊t b / M⌋`.
    pub w: BigInt,
    /// Upper bound on the slack `k = w − v·x` over binary solutions. Negative
    /// only when the equation has no binary solution.
    pub uk: BigInt,
    /// `⌈log₂(u_k + 1)⌉`, the number of bits needed for `k`.
    pub nk: usize,
}

pub fn modular_transform(eq: Equation<'_>, p: &DisaggParams) -> ModularImage {
    let (t, m) = (&p.t, &p.modulus);
    let split = |a: &BigInt| {
        let (q, r) = (t * a).div_mod_floor(m);
        (r, q)
    };
    let (c, v): (Vec<BigInt>, Vec<BigInt>) = eq.coeffs.iter().map(split).unzip();
    let (d, w) = split(eq.rhs);
    let uk = uk_bound(eq, &p.ratio());
    let nk = bits_for(&uk);
    ModularImage { c, d, v, w, uk, nk }
}

/// Applies the transforms in order, each to the image produced by the previous
/// one: `(a, b) → (c¹, d¹) → (c², d²) → …`.
pub fn chain_transform(eq: Equation<'_>, steps: &[DisaggParams]) -> Vec<ModularImage> {
    let mut out: Vec<ModularImage> = Vec::with_capacity(steps.len());
    for p in steps {
        let img = match out.last() {
            None => modular_transform(eq, p),
            Some(prev) => modular_transform(
                Equation {
                    coeffs: &prev.c,
                    rhs: &prev.d,
                },
                p,
            ),
        };
        out.push(img);
    }
    out
}

fn bits_for(uk: &BigInt) -> usize {
    if uk.is_positive() {
        uk.bits() as usize
    } else {
        0
    }
}

/// `g(r) = b̃ r + ⌊b r⌋ − Σ⌊a_i r⌋`; `⌊g(r)⌋ = u_k`.
pub fn g_value(eq: Equation<'_>, r: &BigRational) -> BigRational {
    let bt = BigRational::from_integer(eq.complement_rhs());
    let integer_part = floor_mul(eq.rhs, r) - eq.coeffs.iter().map(|a| floor_mul(a, r)).sum::<BigInt>();
    bt * r + BigRational::from_integer(integer_part)
}

/// `⌊b̃ r⌋ + ⌊b r⌋ − Σ⌊a_i r⌋`.
pub fn uk_bound(eq: Equation<'_>, r: &BigRational) -> BigInt {
    floor_mul(&eq.complement_rhs(), r) + floor_mul(eq.rhs, r) - eq.coeffs.iter().map(|a| floor_mul(a, r)).sum::<BigInt>()
}

/// The three equivalent characterizations of `u_k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealConditions {
    /// `Σ c_i < M + d`.
    pub sum_below: bool,
    /// `g(t/M) < 1`.
    pub g_below_one: bool,
    /// `u_k = 0`.
    pub uk_zero: bool,
}

impl IdealConditions {
    pub fn agree(&self) -> bool {
        self.sum_below == self.g_below_one && self.g_below_one == self.uk_zero
    }
}

pub fn ideal_conditions(eq: Equation<'_>, p: &DisaggParams) -> IdealConditions {
    let img = modular_transform(eq, p);
    let sum_c: BigInt = img.c.iter().sum();
    IdealConditions {
        sum_below: sum_c < &p.modulus + &img.d,
        g_below_one: g_value(eq, &p.ratio()) < BigRational::one(),
        uk_zero: img.uk.is_zero(),
    }
}

/// `Σ c_i < M + d`: the transform yields an extra equation with no slack.
pub fn is_ideal(eq: Equation<'_>, p: &DisaggParams) -> bool {
    let cond = ideal_conditions(eq, p);
    debug_assert!(
        cond.agree() || g_value(eq, &p.ratio()).is_negative(),
        "ideal conditions disagree: {cond:?}"
    );
    cond.sum_below
}

/// A system extended by one disaggregated equation `v·x + Σ 2^i k_i = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisaggregatedSystem {
    pub base: LdeSystem,
    /// The augmented system over `(x, k_1, …, k_{n_k})`.
    pub system: LdeSystem,
    /// `(v | 1, 2, …, 2^{n_k − 1})`.
    pub extra_row: Vec<BigInt>,
    pub extra_rhs: BigInt,
    pub k_count: usize,
    pub row_index: usize,
    pub params: DisaggParams,
    pub image: ModularImage,
}

/// Appends the disaggregated form of row `row` of `sys`; existing rows get
/// zero coefficients for the new `k` bits.
///
/// Fails with [`Error::RankDeficient`] when the new row adds no information
/// (e.g. `v = 0` and `u_k = 0`), and with [`Error::InvalidParams`] when
/// `u_k < 0`, which certifies that the row has no binary solution.
pub fn build_disaggregated(sys: &LdeSystem, row: usize, p: &DisaggParams) -> Result<DisaggregatedSystem> {
    let eq = sys.equation(row)?;
    let image = modular_transform(eq, p);
    if image.uk.is_negative() {
        return Err(Error::InvalidParams("u_k < 0: the row has no binary solution".into()));
    }
    let nk = image.nk;
    let mut rows: Vec<Vec<BigInt>> = sys
        .rows()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.extend(core::iter::repeat_n(BigInt::zero(), nk));
            r
        })
        .collect();
    let mut extra = image.v.clone();
    extra.extend((0..nk).map(|i| BigInt::one() << i));
    rows.push(extra.clone());
    let mut rhs = sys.rhs().to_vec();
    rhs.push(image.w.clone());
    let system = LdeSystem::new(rows, rhs)?;
    Ok(DisaggregatedSystem {
        base: sys.clone(),
        system,
        extra_row: extra,
        extra_rhs: image.w.clone(),
        k_count: nk,
        row_index: row,
        params: p.clone(),
        image,
    })
}

fn slack(eq: Equation<'_>, r: &BigRational, x: &[BigInt]) -> Result<(BigInt, BigInt)> {
    if x.len() != eq.coeffs.len() || eq.evaluate(x) != *eq.rhs {
        return Err(Error::NotASolution);
    }
    let v: Vec<BigInt> = eq.coeffs.iter().map(|a| floor_mul(a, r)).collect();
    let k = floor_mul(eq.rhs, r) - dot(&v, x);
    Ok((k, uk_bound(eq, r)))
}

/// Whether the disaggregated equation at `r` excludes the integer solution
/// `x̃`, i.e. its slack `w − v·x̃` falls outside `[0, u_k]`.
pub fn cuts_off(eq: Equation<'_>, r: &BigRational, x: &[BigInt]) -> Result<bool> {
    let (k, uk) = slack(eq, r, x)?;
    Ok(k > uk || k.is_negative())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NjpDeltas {
    pub dv: Vec<BigInt>,
    pub dw: BigInt,
    pub dw_tilde: BigInt,
    pub duk: BigInt,
}

/// Floor increments between neighbouring jump points `r1 < r2`.
pub fn njp_deltas(eq: Equation<'_>, r1: &BigRational, r2: &BigRational) -> Result<NjpDeltas> {
    if r1 >= r2 || !is_jump_point(eq, r1) || !is_jump_point(eq, r2) || has_jump_between(eq, r1, r2) {
        return Err(Error::NotNeighbours);
    }
    let bt = eq.complement_rhs();
    let dv: Vec<BigInt> = eq.coeffs.iter().map(|a| floor_mul(a, r2) - floor_mul(a, r1)).collect();
    let dw = floor_mul(eq.rhs, r2) - floor_mul(eq.rhs, r1);
    let dw_tilde = floor_mul(&bt, r2) - floor_mul(&bt, r1);
    let duk = &dw_tilde + &dw - dv.iter().sum::<BigInt>();
    Ok(NjpDeltas { dv, dw, dw_tilde, duk })
}

/// `Δw ≤ Δv·x̃ ≤ ΣΔv − Δw̃`: a cut at `r1` persists at `r2`.
pub fn njp_right_dominates(eq: Equation<'_>, r1: &BigRational, r2: &BigRational, x: &[BigInt]) -> Result<bool> {
    let d = njp_deltas(eq, r1, r2)?;
    slack(eq, r1, x)?;
    let s = dot(&d.dv, x);
    let upper = d.dv.iter().sum::<BigInt>() - &d.dw_tilde;
    Ok(d.dw <= s && s <= upper)
}

/// `ΣΔv − Δw̃ ≤ Δv·x̃ ≤ Δw`: a cut at `r2` persists at `r1`.
pub fn njp_left_dominates(eq: Equation<'_>, r1: &BigRational, r2: &BigRational, x: &[BigInt]) -> Result<bool> {
    let d = njp_deltas(eq, r1, r2)?;
    slack(eq, r1, x)?;
    let s = dot(&d.dv, x);
    let lower = d.dv.iter().sum::<BigInt>() - &d.dw_tilde;
    Ok(lower <= s && s <= d.dw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ints;
    use crate::problem::SubsetSumInstance;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn toy() -> SubsetSumInstance {
        SubsetSumInstance::from_i64(&[3, 15, 6], 9).unwrap()
    }

    #[test]
    fn toy_transform() {
        let inst = toy();
        let img = modular_transform(inst.equation(), &DisaggParams::from_u64(6, 15).unwrap());
        assert_eq!(img.v, ints(&[1, 6, 2]));
        assert_eq!(img.w, BigInt::from(3));
        assert_eq!(img.uk, BigInt::zero());
        assert_eq!(img.nk, 0);
        assert_eq!(g_value(inst.equation(), &q(1, 2)), q(1, 2));
        assert_eq!(uk_bound(inst.equation(), &q(1, 2)), BigInt::zero());
    }

    #[test]
    fn relations_hold() {
        let inst = toy();
        let p = DisaggParams::from_u64(7, 11).unwrap();
        let img = modular_transform(inst.equation(), &p);
        for ((c, v), a) in img.c.iter().zip(&img.v).zip(inst.weights()) {
            assert_eq!(c, &(p.t() * a - p.modulus() * v));
        }
        assert_eq!(img.d, p.t() * inst.target() - p.modulus() * &img.w);
    }

    #[test]
    fn small_t_leaves_equation() {
        let inst = toy();
        let img = modular_transform(inst.equation(), &DisaggParams::from_u64(1, 100).unwrap());
        assert_eq!(img.c, ints(&[3, 15, 6]));
        assert_eq!(img.d, BigInt::from(9));
        assert!(img.v.iter().all(Zero::is_zero));
    }

    #[test]
    fn params_validated() {
        assert!(DisaggParams::from_u64(5, 5).is_err());
        assert!(DisaggParams::from_u64(0, 5).is_err());
    }

    #[test]
    fn cut_off_examples() {
        let inst = toy();
        let x = ints(&[0, 1, -1]);
        assert!(!cuts_off(inst.equation(), &q(1, 2), &x).unwrap());
        assert!(cuts_off(inst.equation(), &q(2, 5), &x).unwrap());
        assert_eq!(cuts_off(inst.equation(), &q(2, 5), &ints(&[1, 1, 1])), Err(Error::NotASolution));
    }

    #[test]
    fn neighbour_check() {
        let inst = toy();
        assert!(njp_deltas(inst.equation(), &q(1, 3), &q(2, 5)).is_ok());
        assert_eq!(njp_deltas(inst.equation(), &q(1, 3), &q(7, 15)), Err(Error::NotNeighbours));
        assert_eq!(njp_deltas(inst.equation(), &q(2, 5), &q(1, 3)), Err(Error::NotNeighbours));
    }

    #[test]
    fn zero_slack_adds_a_row_only() {
        let sys = toy().to_system();
        let ds = build_disaggregated(&sys, 0, &DisaggParams::from_u64(2, 5).unwrap()).unwrap();
        assert_eq!(ds.k_count, 0);
        assert_eq!(ds.system.m(), 2);
        assert_eq!(ds.system.n(), 3);
        assert_eq!(ds.extra_row, ints(&[1, 6, 2]));
        assert!(matches!(build_disaggregated(&sys, 1, &DisaggParams::from_u64(2, 5).unwrap()), Err(Error::InvalidRow(1))));
    }
}

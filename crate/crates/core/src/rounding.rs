//! Nearest-integer rounding with explicit tie handling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

/// Tie-breaking rule for [`round`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    /// `⌈q − 1/2⌉`: ties go down, so 9/2 → 4 and −9/2 → −5.
    #[default]
    HalfDown,
    /// Ties go away from zero, so 9/2 → 5 and −9/2 → −5. Commutes with negation.
    HalfAwayFromZero,
}

/// `⌈q − 1/2⌉`, the rounding used throughout LLL and the reduce sweeps.
///
/// The result `z` satisfies `q − 1/2 ≤ z < q + 1/2`.
pub fn nearest_integer(q: &BigRational) -> BigInt {
    // ⌈(2p − d) / 2d⌉ = −⌊(d − 2p) / 2d⌋
    let p = q.numer();
    let d = q.denom();
    let num: BigInt = d - (p << 1);
    let den: BigInt = d << 1;
    -num.div_floor(&den)
}

pub fn round(q: &BigRational, mode: Rounding) -> BigInt {
    match mode {
        Rounding::HalfDown => nearest_integer(q),
        Rounding::HalfAwayFromZero => {
            let z = nearest_integer(&q.abs());
            let twice_frac = (q.abs() - BigRational::from_integer(z.clone())) * BigInt::from(2);
            // Exact tie: |q| = z + 1/2 rounded down by the half-down rule.
            let z = if twice_frac == BigRational::from_integer(BigInt::from(1)) {
                z + 1
            } else {
                z
            };
            if q.is_negative() {
                -z
            } else {
                z
            }
        }
    }
}

/// `⌊q⌋`.
pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// `⌊a·r⌋` for an integer `a`.
pub fn floor_mul(a: &BigInt, r: &BigRational) -> BigInt {
    (a * r.numer()).div_floor(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ties_round_down() {
        assert_eq!(nearest_integer(&q(9, 2)), BigInt::from(4));
        assert_eq!(nearest_integer(&q(-9, 2)), BigInt::from(-5));
        assert_eq!(nearest_integer(&q(1, 2)), BigInt::from(0));
        assert_eq!(nearest_integer(&q(-1, 2)), BigInt::from(-1));
    }

    #[test]
    fn non_ties() {
        assert_eq!(nearest_integer(&q(7, 3)), BigInt::from(2));
        assert_eq!(nearest_integer(&q(-7, 3)), BigInt::from(-2));
        assert_eq!(nearest_integer(&q(8, 3)), BigInt::from(3));
        assert_eq!(nearest_integer(&q(5, 1)), BigInt::from(5));
    }

    #[test]
    fn symmetric_mode_commutes_with_negation() {
        for (n, d) in [(9, 2), (7, 3), (1, 2), (5, 4), (-11, 6)] {
            let pos = round(&q(n, d), Rounding::HalfAwayFromZero);
            let neg = round(&q(-n, d), Rounding::HalfAwayFromZero);
            assert_eq!(pos, -neg);
        }
        assert_eq!(round(&q(9, 2), Rounding::HalfAwayFromZero), BigInt::from(5));
        assert_eq!(round(&q(7, 3), Rounding::HalfAwayFromZero), BigInt::from(2));
    }

    #[test]
    fn floors() {
        assert_eq!(floor(&q(8, 3)), BigInt::from(2));
        assert_eq!(floor(&q(-8, 3)), BigInt::from(-3));
        assert_eq!(floor_mul(&BigInt::from(15), &q(2, 5)), BigInt::from(6));
    }
}

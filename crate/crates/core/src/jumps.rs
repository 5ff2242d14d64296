//! Jump points of an equation: the rationals `r ∈ (0,1)` at which one of
//! `⌊a_i r⌋`, `⌊b r⌋`, `⌊b̃ r⌋` increases.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::problem::Equation;
use crate::{Error, Result};

pub const DEFAULT_JUMP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JumpSource {
    /// `j / a_i`.
    Weight(usize),
    /// `j / b`.
    Target,
    /// `j / b̃`.
    ComplementTarget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpPoint {
    pub value: BigRational,
    /// Sorted, without duplicates.
    pub sources: Vec<JumpSource>,
}

#[derive(PartialEq, Eq)]
struct Head {
    value: BigRational,
    stream: usize,
    j: BigInt,
}

impl Ord for Head {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value).then(self.stream.cmp(&other.stream))
    }
}

impl PartialOrd for Head {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ascending, deduplicated stream of jump points, produced lazily by merging
/// one arithmetic progression `j/den` per source.
pub struct JumpPoints {
    streams: Vec<(JumpSource, BigInt)>,
    heap: BinaryHeap<Reverse<Head>>,
}

impl JumpPoints {
    pub fn new(eq: Equation<'_>) -> Self {
        let mut streams: Vec<(JumpSource, BigInt)> = eq
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| (JumpSource::Weight(i), a.clone()))
            .collect();
        streams.push((JumpSource::Target, eq.rhs.clone()));
        streams.push((JumpSource::ComplementTarget, eq.complement_rhs()));
        let mut heap = BinaryHeap::new();
        for (idx, (_, den)) in streams.iter().enumerate() {
            if *den > BigInt::one() {
                heap.push(Reverse(Head {
                    value: BigRational::new(BigInt::one(), den.clone()),
                    stream: idx,
                    j: BigInt::one(),
                }));
            }
        }
        Self { streams, heap }
    }

    fn advance(&mut self, head: Head) {
        let den = &self.streams[head.stream].1;
        let j: BigInt = head.j + 1u32;
        if &j < den {
            self.heap.push(Reverse(Head {
                value: BigRational::new(j.clone(), den.clone()),
                stream: head.stream,
                j,
            }));
        }
    }
}

impl Iterator for JumpPoints {
    type Item = JumpPoint;

    fn next(&mut self) -> Option<JumpPoint> {
        let Reverse(first) = self.heap.pop()?;
        let value = first.value.clone();
        let mut sources = alloc::vec![self.streams[first.stream].0];
        self.advance(first);
        while self.heap.peek().is_some_and(|Reverse(h)| h.value == value) {
            let Reverse(h) = self.heap.pop().unwrap();
            sources.push(self.streams[h.stream].0);
            self.advance(h);
        }
        sources.sort();
        sources.dedup();
        Some(JumpPoint { value, sources })
    }
}

pub fn jump_points(eq: Equation<'_>) -> JumpPoints {
    JumpPoints::new(eq)
}

/// All jump points in ascending order; fails once more than `cap` appear.
pub fn enumerate_jump_points(eq: Equation<'_>, cap: usize) -> Result<Vec<JumpPoint>> {
    let mut out = Vec::new();
    for p in jump_points(eq) {
        if out.len() == cap {
            return Err(Error::SizeLimit { cap });
        }
        out.push(p);
    }
    Ok(out)
}

/// Whether `r` is itself a jump point of `eq`.
pub fn is_jump_point(eq: Equation<'_>, r: &BigRational) -> bool {
    let zero = BigRational::from_integer(0.into());
    if *r <= zero || *r >= BigRational::one() {
        return false;
    }
    denominators(eq).any(|den| (&den % r.denom()) == BigInt::from(0))
}

/// Whether some jump point lies strictly between `r1 < r2`.
pub fn has_jump_between(eq: Equation<'_>, r1: &BigRational, r2: &BigRational) -> bool {
    denominators(eq).any(|den| {
        // smallest j with j/den > r1
        let j = crate::rounding::floor_mul(&den, r1) + 1;
        BigRational::new(j, den) < *r2
    })
}

fn denominators(eq: Equation<'_>) -> impl Iterator<Item = BigInt> + '_ {
    eq.coeffs
        .iter()
        .cloned()
        .chain([eq.rhs.clone(), eq.complement_rhs()])
        .filter(|d| *d > BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::SubsetSumInstance;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn toy_instance_has_23_points() {
        let inst = SubsetSumInstance::from_i64(&[3, 15, 6], 9).unwrap();
        let pts = enumerate_jump_points(inst.equation(), DEFAULT_JUMP_CAP).unwrap();
        assert_eq!(pts.len(), 23);
        assert!(pts.windows(2).all(|w| w[0].value < w[1].value));
        assert_eq!(pts[0].value, q(1, 15));
        let third = pts.iter().find(|p| p.value == q(1, 3)).unwrap();
        assert_eq!(
            third.sources,
            alloc::vec![JumpSource::Weight(0), JumpSource::Weight(1), JumpSource::Weight(2), JumpSource::Target, JumpSource::ComplementTarget]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let inst = SubsetSumInstance::from_i64(&[3, 15, 6], 9).unwrap();
        assert_eq!(enumerate_jump_points(inst.equation(), 5), Err(Error::SizeLimit { cap: 5 }));
        assert_eq!(enumerate_jump_points(inst.equation(), 23).unwrap().len(), 23);
        assert_eq!(jump_points(inst.equation()).take(5).count(), 5);
    }

    #[test]
    fn membership_and_gaps() {
        let inst = SubsetSumInstance::from_i64(&[3, 15, 6], 9).unwrap();
        let eq = inst.equation();
        assert!(is_jump_point(eq, &q(2, 5)));
        assert!(!is_jump_point(eq, &q(1, 7)));
        assert!(!has_jump_between(eq, &q(1, 3), &q(2, 5)));
        assert!(has_jump_between(eq, &q(1, 3), &q(7, 15)));
    }
}

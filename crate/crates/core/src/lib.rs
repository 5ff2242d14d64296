//! Exact-arithmetic lattice tooling for subset-sum problems and systems of
//! linear Diophantine equations over binary unknowns.
//!
//! Everything in this crate is `no_std` (with `alloc`). Lattice arithmetic is
//! carried out over arbitrary-precision integers and rationals; only the
//! geometric features in [`analysis`] fall back to `f64`.
//!
//! Layout:
//!
//! * [`lattice`]: Gram–Schmidt orthogonalization, its incremental update
//!   rules and LLL reduction.
//! * [`problem`], [`kernel`], [`attacks`]: problem types, the `[I; A·N]`
//!   kernel formulation and the LO / CJLOSS / AHL lattice attacks.
//! * [`reduce`]: shortening a particular solution against a kernel basis.
//! * [`disagg`], [`jumps`]: the modular `(t, M)` disaggregation and jump points.
//! * [`analysis`]: volume, ellipsoid and rectangularity features of kernels.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod attacks;
pub mod disagg;
mod eigen;
mod error;
pub mod jumps;
pub mod kernel;
pub mod lattice;
pub mod linalg;
pub mod problem;
pub mod reduce;
pub mod rounding;

pub use error::Error;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Shorthand for building a `Vec<BigInt>` from small integers.
pub fn ints(values: &[i64]) -> alloc::vec::Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

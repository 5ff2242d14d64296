//! The LO, CJLOSS and AHL lattice attacks, each with its column-scan rule.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{lll, LatticeBasis};
use crate::problem::{uncomplement, LdeSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictStatus {
    BinarySolution(Vec<BigInt>),
    ShortNonBinary(Vec<BigInt>),
    NoIntegerSolution,
    Failure,
}

/// How a verdict was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerdictMeta {
    /// The solution came from the complemented equation and was flipped back.
    pub complemented: bool,
    /// Index of the reduced-basis column the solution was read from.
    pub column: Option<usize>,
    /// The common nonzero value of a matched LO column.
    pub lambda: Option<BigInt>,
}

/// Outcome of an attack. Solutions carried by a verdict always satisfy the
/// system they were checked against: the constructors verify by substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackVerdict {
    status: VerdictStatus,
    pub meta: VerdictMeta,
}

pub fn is_binary(x: &[BigInt]) -> bool {
    x.iter().all(|v| v.is_zero() || v.is_one())
}

impl AttackVerdict {
    /// Classifies an integer solution of `sys` as binary or short non-binary.
    pub fn from_solution(sys: &LdeSystem, x: Vec<BigInt>, meta: VerdictMeta) -> Result<Self> {
        if !sys.is_solution(&x) {
            return Err(Error::NotASolution);
        }
        let status = if is_binary(&x) {
            VerdictStatus::BinarySolution(x)
        } else {
            VerdictStatus::ShortNonBinary(x)
        };
        Ok(Self { status, meta })
    }

    pub fn binary(sys: &LdeSystem, x: Vec<BigInt>, meta: VerdictMeta) -> Result<Self> {
        if !is_binary(&x) {
            return Err(Error::NotASolution);
        }
        Self::from_solution(sys, x, meta)
    }

    pub fn no_integer_solution(meta: VerdictMeta) -> Self {
        Self {
            status: VerdictStatus::NoIntegerSolution,
            meta,
        }
    }

    pub fn failure(meta: VerdictMeta) -> Self {
        Self {
            status: VerdictStatus::Failure,
            meta,
        }
    }

    pub fn status(&self) -> &VerdictStatus {
        &self.status
    }

    pub fn into_status(self) -> VerdictStatus {
        self.status
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.status, VerdictStatus::BinarySolution(_))
    }

    /// The solution vector for either solution variant.
    pub fn solution(&self) -> Option<&[BigInt]> {
        match &self.status {
            VerdictStatus::BinarySolution(x) | VerdictStatus::ShortNonBinary(x) => Some(x),
            _ => None,
        }
    }
}

/// Runs `scan` on `sys`, and for single equations also on the complemented
/// equation, flipping any hit back.
fn with_complement(
    sys: &LdeSystem,
    scan: impl Fn(&LdeSystem) -> Result<Option<(Vec<BigInt>, VerdictMeta)>>,
) -> Result<AttackVerdict> {
    if let Some((x, meta)) = scan(sys)? {
        return AttackVerdict::binary(sys, x, meta);
    }
    if let Some(comp) = sys.complement() {
        if let Some((y, mut meta)) = scan(&comp)? {
            meta.complemented = true;
            return AttackVerdict::binary(sys, uncomplement(&y), meta);
        }
    }
    Ok(AttackVerdict::failure(VerdictMeta::default()))
}

/// Lagarias–Odlyzko: reduce `[[I, 0], [−A, b]]` and look for a column whose
/// tail is zero and whose head takes only the values `0` and one `λ ≠ 0`.
pub fn attack_lo(sys: &LdeSystem, alpha: &BigRational) -> Result<AttackVerdict> {
    with_complement(sys, |s| scan_lo(s, alpha))
}

fn scan_lo(sys: &LdeSystem, alpha: &BigRational) -> Result<Option<(Vec<BigInt>, VerdictMeta)>> {
    let (m, n) = (sys.m(), sys.n());
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c = alloc::vec![BigInt::zero(); n + m];
            c[j] = BigInt::one();
            for i in 0..m {
                c[n + i] = -&sys.rows()[i][j];
            }
            c
        })
        .collect();
    let mut last = alloc::vec![BigInt::zero(); n];
    last.extend(sys.rhs().iter().cloned());
    cols.push(last);
    let reduced = lll(&LatticeBasis::from_columns(cols)?, alpha)?;
    for (idx, col) in reduced.columns().iter().enumerate() {
        if !col[n..].iter().all(Zero::is_zero) {
            continue;
        }
        let Some(lambda) = col[..n].iter().find(|v| !v.is_zero()).cloned() else {
            continue;
        };
        if !col[..n].iter().all(|v| v.is_zero() || *v == lambda) {
            continue;
        }
        let x: Vec<BigInt> = col[..n].iter().map(|v| v / &lambda).collect();
        if sys.is_solution(&x) {
            let meta = VerdictMeta {
                column: Some(idx),
                lambda: Some(lambda),
                ..VerdictMeta::default()
            };
            return Ok(Some((x, meta)));
        }
    }
    Ok(None)
}

/// CJLOSS on the doubled basis `[[2I, 1], [2N·A, 2N·b]]`: a column with head in
/// `{±1}^n` and zero tail encodes `x = (head + 1)/2`. Requires `N > √n / 2`.
pub fn attack_cjloss(sys: &LdeSystem, scale: &BigInt, alpha: &BigRational) -> Result<AttackVerdict> {
    // N > √n/2  ⇔  4N² > n
    if !scale.is_positive() || BigInt::from(4) * scale * scale <= BigInt::from(sys.n()) {
        return Err(Error::InvalidN);
    }
    with_complement(sys, |s| scan_cjloss(s, scale, alpha))
}

fn scan_cjloss(sys: &LdeSystem, scale: &BigInt, alpha: &BigRational) -> Result<Option<(Vec<BigInt>, VerdictMeta)>> {
    let (m, n) = (sys.m(), sys.n());
    let two_n = scale * BigInt::from(2);
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c = alloc::vec![BigInt::zero(); n + m];
            c[j] = BigInt::from(2);
            for i in 0..m {
                c[n + i] = &two_n * &sys.rows()[i][j];
            }
            c
        })
        .collect();
    let mut last = alloc::vec![BigInt::one(); n];
    last.extend(sys.rhs().iter().map(|b| &two_n * b));
    cols.push(last);
    let reduced = lll(&LatticeBasis::from_columns(cols)?, alpha)?;
    for (idx, col) in reduced.columns().iter().enumerate() {
        if !col[n..].iter().all(Zero::is_zero) || !col[..n].iter().all(|v| v.abs().is_one()) {
            continue;
        }
        for sign in [1i32, -1] {
            let x: Vec<BigInt> = col[..n].iter().map(|v| (v * sign + 1) / 2).collect();
            if sys.is_solution(&x) {
                let meta = VerdictMeta {
                    column: Some(idx),
                    ..VerdictMeta::default()
                };
                return Ok(Some((x, meta)));
            }
        }
    }
    Ok(None)
}

pub fn default_ahl_n1() -> BigInt {
    BigInt::from(10_000)
}

/// `2^(n+m)·N1² + 1`, the smallest admissible `N2`.
pub fn default_ahl_n2(n: usize, m: usize, n1: &BigInt) -> BigInt {
    ((n1 * n1) << (n + m)) + 1
}

/// Aardal–Hurkens–Lenstra: reduce `[[I, 0], [0, N1], [N2·A, −N2·b]]`. Column
/// `n − m` of the result carries `±N1` in row `n` and zeros below when an
/// integer solution exists; its head is returned, sign-normalized.
pub fn attack_ahl(sys: &LdeSystem, n1: &BigInt, n2: &BigInt, alpha: &BigRational) -> Result<AttackVerdict> {
    let (m, n) = (sys.m(), sys.n());
    if !n1.is_positive() || *n2 <= ((n1 * n1) << (n + m)) {
        return Err(Error::InvalidBigInts);
    }
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c = alloc::vec![BigInt::zero(); n + 1 + m];
            c[j] = BigInt::one();
            for i in 0..m {
                c[n + 1 + i] = n2 * &sys.rows()[i][j];
            }
            c
        })
        .collect();
    let mut last = alloc::vec![BigInt::zero(); n];
    last.push(n1.clone());
    last.extend(sys.rhs().iter().map(|b| -(n2 * b)));
    cols.push(last);
    let reduced = lll(&LatticeBasis::from_columns(cols)?, alpha)?;
    let idx = n - m;
    let col = &reduced.columns()[idx];
    if col[n].abs() != *n1 || !col[n + 1..].iter().all(Zero::is_zero) {
        return Ok(AttackVerdict::failure(VerdictMeta::default()));
    }
    let x: Vec<BigInt> = if col[n].is_negative() {
        col[..n].iter().map(|v| -v).collect()
    } else {
        col[..n].to_vec()
    };
    let meta = VerdictMeta {
        column: Some(idx),
        ..VerdictMeta::default()
    };
    AttackVerdict::from_solution(sys, x, meta)
}

/// `⌈√n / 2⌉ + 1`, a convenient admissible CJLOSS scale for small `n`.
pub fn minimal_cjloss_scale(n: usize) -> BigInt {
    BigInt::from(n).sqrt() / 2 + 2
}

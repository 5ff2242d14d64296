//! Lattice bases, Gram–Schmidt orthogonalization and LLL reduction.
//!
//! Conventions: a basis is a list of integer *columns* `b_0, …, b_{n-1}`, all of
//! the same ambient dimension. `mu[k][j]` (for `j < k`) is the coefficient of
//! `b_k` along `b*_j`, so `b_k = b*_k + Σ_{j<k} mu[k][j]·b*_j`. Indices are
//! zero-based: [`gso_after_swap`] with index `k` exchanges `b_{k-1}` and `b_k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rounding::nearest_integer;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    columns: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// Builds a basis from its columns. Columns must be non-empty and share one
    /// length; linear independence is checked lazily by [`gso`] and [`lll`].
    pub fn from_columns(columns: Vec<Vec<BigInt>>) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::DimensionMismatch("basis has no columns".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("columns have length zero".into()));
        }
        if let Some(i) = columns.iter().position(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "column {i} has length {}, expected {dim}",
                columns[i].len()
            )));
        }
        Ok(Self { dim, columns })
    }

    pub fn from_i64_columns(columns: &[&[i64]]) -> Result<Self> {
        Self::from_columns(columns.iter().map(|c| crate::ints(c)).collect())
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[BigInt] {
        &self.columns[i]
    }

    pub fn into_columns(self) -> Vec<Vec<BigInt>> {
        self.columns
    }

    pub fn is_independent(&self) -> bool {
        crate::linalg::rank(&self.columns) == self.columns.len()
    }
}

/// Gram–Schmidt data of a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsoResult {
    /// Unit lower-triangular `n × n`; `mu[i][i] = 1` and `mu[i][j] = 0` for `j > i`.
    pub mu: Vec<Vec<BigRational>>,
    /// Orthogonal vectors `b*_i` as columns.
    pub bstar: Vec<Vec<BigRational>>,
}

impl GsoResult {
    pub fn len(&self) -> usize {
        self.bstar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bstar.is_empty()
    }

    /// `‖b*_i‖²`.
    pub fn norm_sq(&self, i: usize) -> BigRational {
        rdot(&self.bstar[i], &self.bstar[i])
    }

    pub fn norms_sq(&self) -> Vec<BigRational> {
        (0..self.len()).map(|i| self.norm_sq(i)).collect()
    }

    /// Rebuilds the basis columns `b_k = Σ_j mu[k][j]·b*_j`.
    pub fn reconstruct(&self) -> Vec<Vec<BigRational>> {
        let n = self.len();
        let dim = self.bstar.first().map_or(0, Vec::len);
        (0..n)
            .map(|k| {
                let mut col = vec![BigRational::zero(); dim];
                for j in 0..=k {
                    for (c, s) in col.iter_mut().zip(&self.bstar[j]) {
                        *c += &self.mu[k][j] * s;
                    }
                }
                col
            })
            .collect()
    }
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Exact Gram–Schmidt orthogonalization.
pub fn gso(basis: &LatticeBasis) -> Result<GsoResult> {
    let n = basis.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let bk = to_rational(basis.column(k));
        let mut v = bk.clone();
        for j in 0..k {
            let m = rdot(&bk, &bstar[j]) / &norms[j];
            for (vi, sj) in v.iter_mut().zip(&bstar[j]) {
                *vi -= &m * sj;
            }
            mu[k][j] = m;
        }
        mu[k][k] = BigRational::one();
        let nrm = rdot(&v, &v);
        if nrm.is_zero() {
            return Err(Error::DependentColumns { column: k });
        }
        norms.push(nrm);
        bstar.push(v);
    }
    Ok(GsoResult { mu, bstar })
}

/// In-place `mu` update for `b_k ← b_k − γ·b_l` (`l < k`). The `b*` are unchanged.
pub(crate) fn reduce_mu(mu: &mut [Vec<BigRational>], k: usize, l: usize, gamma: &BigInt) {
    if gamma.is_zero() {
        return;
    }
    let g = BigRational::from_integer(gamma.clone());
    for j in 0..l {
        let d = &g * &mu[l][j];
        mu[k][j] -= d;
    }
    mu[k][l] -= g;
}

/// In-place `mu` / `‖b*‖²` update for exchanging `b_{k-1}` and `b_k`.
pub(crate) fn swap_mu(mu: &mut [Vec<BigRational>], norms: &mut [BigRational], k: usize) {
    let n = norms.len();
    let m = mu[k][k - 1].clone();
    let bk = norms[k].clone();
    let bk1 = norms[k - 1].clone();
    let b_new = &bk + &m * &m * &bk1;
    let m_new = &m * &bk1 / &b_new;
    norms[k] = &bk1 * &bk / &b_new;
    norms[k - 1] = b_new.clone();
    mu[k][k - 1] = m_new;
    for j in 0..k - 1 {
        let t = mu[k - 1][j].clone();
        mu[k - 1][j] = core::mem::replace(&mut mu[k][j], t);
    }
    for row in mu.iter_mut().take(n).skip(k + 1) {
        let a = row[k - 1].clone();
        let b = row[k].clone();
        row[k - 1] = (&b * &bk + &a * &m * &bk1) / &b_new;
        row[k] = a - b * &m;
    }
}

/// GSO of the basis obtained from `g`'s basis by `b_k ← b_k − γ·b_l`, computed
/// without re-orthogonalizing. Requires `l < k < n`.
pub fn gso_after_reduce(g: &GsoResult, k: usize, l: usize, gamma: &BigInt) -> Result<GsoResult> {
    let n = g.len();
    if k >= n || l >= k {
        return Err(Error::IndexOutOfRange(format!("need l < k < {n}, got k={k}, l={l}")));
    }
    let mut out = g.clone();
    reduce_mu(&mut out.mu, k, l, gamma);
    Ok(out)
}

/// GSO of the basis obtained from `g`'s basis by exchanging `b_{k-1}` and `b_k`,
/// computed without re-orthogonalizing. Requires `1 ≤ k < n`.
pub fn gso_after_swap(g: &GsoResult, k: usize) -> Result<GsoResult> {
    let n = g.len();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange(format!("need 1 <= k < {n}, got k={k}")));
    }
    let mut norms = g.norms_sq();
    let old_bk1 = norms[k - 1].clone();
    let m = g.mu[k][k - 1].clone();
    let mut out = g.clone();
    swap_mu(&mut out.mu, &mut norms, k);
    // New b*_{k-1} = b*_k + μ·b*_{k-1}; new b*_k = (B_k / B')·b*_{k-1} − μ'·b*_k.
    let ratio = &norms[k] / &old_bk1;
    let m_new = &out.mu[k][k - 1];
    let first: Vec<BigRational> = g.bstar[k]
        .iter()
        .zip(&g.bstar[k - 1])
        .map(|(s, p)| s + &m * p)
        .collect();
    let second: Vec<BigRational> = g.bstar[k - 1]
        .iter()
        .zip(&g.bstar[k])
        .map(|(p, s)| &ratio * p - m_new * s)
        .collect();
    out.bstar[k - 1] = first;
    out.bstar[k] = second;
    Ok(out)
}

/// The customary LLL parameter 99/100.
pub fn default_alpha() -> BigRational {
    BigRational::new(99.into(), 100.into())
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    let quarter = BigRational::new(1.into(), 4.into());
    if *alpha <= quarter || *alpha >= BigRational::one() {
        return Err(Error::InvalidAlpha);
    }
    Ok(())
}

/// LLL-reduces `basis` with parameter `alpha ∈ (1/4, 1)`.
///
/// Size reduction only fires when `|μ| > 1/2` and rounds with
/// [`nearest_integer`]. After a failed exchange test the index steps back to
/// `max(k−1, 1)`. Arithmetic is fraction-free: with `d_i = Π_{j<i} ‖b*_j‖²`
/// every `λ_{k,j} = d_{j+1}·μ_{k,j}` is an integer, so the run is exact and
/// makes the same decisions as its rational counterpart.
pub fn lll(basis: &LatticeBasis, alpha: &BigRational) -> Result<LatticeBasis> {
    check_alpha(alpha)?;
    let mut state = IntegralLll::new(basis.columns.clone())?;
    state.run(alpha);
    Ok(LatticeBasis {
        dim: basis.dim,
        columns: state.cols,
    })
}

/// Same reduction as [`lll`], run directly on rational `μ` and `‖b*‖²` with the
/// incremental update rules behind [`gso_after_reduce`] and [`gso_after_swap`].
/// Slower; kept as the reference the integral version is checked against.
pub fn lll_rational(basis: &LatticeBasis, alpha: &BigRational) -> Result<LatticeBasis> {
    check_alpha(alpha)?;
    let g = gso(basis)?;
    let mut norms = g.norms_sq();
    let mut mu = g.mu;
    let mut cols = basis.columns.clone();
    let n = cols.len();
    let half = BigRational::new(1.into(), 2.into());
    let size_reduce = |cols: &mut Vec<Vec<BigInt>>, mu: &mut Vec<Vec<BigRational>>, k: usize, l: usize| {
        if mu[k][l].abs() <= half {
            return;
        }
        let r = nearest_integer(&mu[k][l]);
        let (lo, hi) = cols.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
            *x -= &r * y;
        }
        reduce_mu(mu, k, l, &r);
    };
    let mut k = 1;
    while k < n {
        size_reduce(&mut cols, &mut mu, k, k - 1);
        let m = &mu[k][k - 1];
        if &norms[k] + m * m * &norms[k - 1] < alpha * &norms[k - 1] {
            cols.swap(k - 1, k);
            swap_mu(&mut mu, &mut norms, k);
            k = core::cmp::max(k - 1, 1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(&mut cols, &mut mu, k, l);
            }
            k += 1;
        }
    }
    Ok(LatticeBasis { dim: basis.dim, columns: cols })
}

/// Checks the LLL conditions (`|μ| ≤ 1/2`, Lovász with `alpha`) directly from a
/// fresh GSO.
pub fn is_lll_reduced(basis: &LatticeBasis, alpha: &BigRational) -> Result<bool> {
    check_alpha(alpha)?;
    let g = gso(basis)?;
    let half = BigRational::new(1.into(), 2.into());
    let norms = g.norms_sq();
    for k in 0..g.len() {
        for j in 0..k {
            if g.mu[k][j].abs() > half {
                return Ok(false);
            }
        }
        if k > 0 {
            let m = &g.mu[k][k - 1];
            if &norms[k] + m * m * &norms[k - 1] < alpha * &norms[k - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct IntegralLll {
    cols: Vec<Vec<BigInt>>,
    /// `d[0] = 1`, `d[i+1] = Π_{j≤i} ‖b*_j‖²`.
    d: Vec<BigInt>,
    /// `lam[k][j] = d[j+1]·mu[k][j]` for `j < k`.
    lam: Vec<Vec<BigInt>>,
}

impl IntegralLll {
    fn new(cols: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = cols.len();
        let mut d = vec![BigInt::zero(); n + 1];
        d[0] = BigInt::one();
        let mut lam = vec![vec![BigInt::zero(); n]; n];
        for k in 0..n {
            for j in 0..=k {
                let mut u = crate::linalg::dot(&cols[k], &cols[j]);
                for i in 0..j {
                    u = (&d[i + 1] * u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentColumns { column: k });
                    }
                    d[k + 1] = u;
                }
            }
        }
        Ok(Self { cols, d, lam })
    }

    fn run(&mut self, alpha: &BigRational) {
        let n = self.cols.len();
        let (p, q) = (alpha.numer().clone(), alpha.denom().clone());
        let mut k = 1;
        while k < n {
            self.size_reduce(k, k - 1);
            let l = &self.lam[k][k - 1];
            let lhs = &p * &self.d[k] * &self.d[k];
            let rhs = &q * (&self.d[k + 1] * &self.d[k - 1] + l * l);
            if lhs > rhs {
                self.swap(k);
                k = core::cmp::max(k - 1, 1);
            } else {
                for l in (0..k - 1).rev() {
                    self.size_reduce(k, l);
                }
                k += 1;
            }
        }
    }

    fn size_reduce(&mut self, k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] << 1;
        if two_lam.abs() <= self.d[l + 1] {
            return;
        }
        let r = nearest_integer(&BigRational::new(self.lam[k][l].clone(), self.d[l + 1].clone()));
        let (lo, hi) = self.cols.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
            *x -= &r * y;
        }
        let delta = &r * &self.d[l + 1];
        self.lam[k][l] -= delta;
        for i in 0..l {
            let delta = &r * &self.lam[l][i];
            self.lam[k][i] -= delta;
        }
    }

    fn swap(&mut self, k: usize) {
        let n = self.cols.len();
        self.cols.swap(k - 1, k);
        for j in 0..k - 1 {
            let t = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = core::mem::replace(&mut self.lam[k][j], t);
        }
        let l = self.lam[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &l * &l).div_floor(&self.d[k]);
        for i in k + 1..n {
            let t = self.lam[i][k].clone();
            let new_ik = (&self.d[k + 1] * &self.lam[i][k - 1] - &l * &t) / &self.d[k];
            let new_ik1 = (&b * &t + &l * &new_ik) / &self.d[k + 1];
            self.lam[i][k] = new_ik;
            self.lam[i][k - 1] = new_ik1;
        }
        self.d[k] = b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(cols: &[&[i64]]) -> LatticeBasis {
        LatticeBasis::from_i64_columns(cols).unwrap()
    }

    #[test]
    fn gso_reconstructs() {
        let b = basis(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let g = gso(&b).unwrap();
        let back = g.reconstruct();
        for (c, r) in b.columns().iter().zip(&back) {
            assert_eq!(&to_rational(c), r);
        }
        for i in 0..3 {
            for j in 0..i {
                assert!(rdot(&g.bstar[i], &g.bstar[j]).is_zero());
            }
        }
    }

    #[test]
    fn dependent_columns_rejected() {
        let b = basis(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(gso(&b), Err(Error::DependentColumns { column: 1 }));
        assert!(matches!(lll(&b, &default_alpha()), Err(Error::DependentColumns { .. })));
    }

    #[test]
    fn incremental_updates_match_recomputation() {
        let b = basis(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[5, 3, 5, 8], &[9, 7, 9, 3]]);
        let g = gso(&b).unwrap();
        let swapped = gso_after_swap(&g, 2).unwrap();
        let mut cols = b.columns().to_vec();
        cols.swap(1, 2);
        assert_eq!(swapped, gso(&LatticeBasis::from_columns(cols.clone()).unwrap()).unwrap());

        let gamma = BigInt::from(-3);
        let reduced = gso_after_reduce(&g, 3, 1, &gamma).unwrap();
        let mut cols = b.columns().to_vec();
        let b1 = cols[1].clone();
        for (x, y) in cols[3].iter_mut().zip(&b1) {
            *x -= &gamma * y;
        }
        assert_eq!(reduced, gso(&LatticeBasis::from_columns(cols).unwrap()).unwrap());
    }

    #[test]
    fn index_errors() {
        let g = gso(&basis(&[&[1, 0], &[1, 1]])).unwrap();
        assert!(matches!(gso_after_swap(&g, 0), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(gso_after_swap(&g, 2), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(gso_after_reduce(&g, 1, 1, &BigInt::one()), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn alpha_bounds() {
        let b = basis(&[&[1, 0], &[0, 1]]);
        for (p, q) in [(1, 4), (1, 1), (1, 5), (3, 2)] {
            assert_eq!(lll(&b, &BigRational::new(p.into(), q.into())), Err(Error::InvalidAlpha));
        }
    }

    #[test]
    fn lll_on_textbook_basis() {
        let b = basis(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let r = lll(&b, &BigRational::new(3.into(), 4.into())).unwrap();
        assert!(is_lll_reduced(&r, &BigRational::new(3.into(), 4.into())).unwrap());
        assert_eq!(r.columns()[0], crate::ints(&[0, 1, 0]));
        assert_eq!(lll_rational(&b, &BigRational::new(3.into(), 4.into())).unwrap(), r);
    }
}

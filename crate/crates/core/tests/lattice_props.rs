use knapcrack_core::lattice::{default_alpha, gso, gso_after_reduce, gso_after_swap, is_lll_reduced, lll, lll_rational, LatticeBasis};
use knapcrack_core::rounding::{nearest_integer, round, Rounding};
use knapcrack_core::{BigInt, BigRational, Error};
use knapcrack_testkit::{same_lattice, shortest_vector_norm_sq};
use proptest::prelude::*;

fn independent_basis(max_dim: usize, bound: i64) -> impl Strategy<Value = LatticeBasis> {
    (2..=max_dim)
        .prop_flat_map(move |dim| (Just(dim), 2..=dim))
        .prop_flat_map(move |(dim, n)| proptest::collection::vec(proptest::collection::vec(-bound..=bound, dim), n))
        .prop_filter_map("dependent columns", |cols| {
            let cols: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let b = LatticeBasis::from_columns(cols).ok()?;
            b.is_independent().then_some(b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn swap_update_matches_recomputation(b in independent_basis(6, 20), pick in any::<prop::sample::Index>()) {
        let k = 1 + pick.index(b.len() - 1);
        let g = gso(&b).unwrap();
        let mut cols = b.columns().to_vec();
        cols.swap(k - 1, k);
        let fresh = gso(&LatticeBasis::from_columns(cols).unwrap()).unwrap();
        prop_assert_eq!(gso_after_swap(&g, k).unwrap(), fresh);
    }

    #[test]
    fn reduce_update_matches_recomputation(b in independent_basis(6, 20), pk in any::<prop::sample::Index>(), pl in any::<prop::sample::Index>(), gamma in -7i64..=7) {
        let k = 1 + pk.index(b.len() - 1);
        let l = pl.index(k);
        let gamma = BigInt::from(gamma);
        let g = gso(&b).unwrap();
        let mut cols = b.columns().to_vec();
        let bl = cols[l].clone();
        for (x, y) in cols[k].iter_mut().zip(&bl) {
            *x -= &gamma * y;
        }
        let fresh = gso(&LatticeBasis::from_columns(cols).unwrap()).unwrap();
        prop_assert_eq!(gso_after_reduce(&g, k, l, &gamma).unwrap(), fresh);
    }

    #[test]
    fn lll_contract(b in independent_basis(6, 1_000_000)) {
        let alpha = default_alpha();
        let r = lll(&b, &alpha).unwrap();
        prop_assert!(is_lll_reduced(&r, &alpha).unwrap());
        prop_assert!(same_lattice(b.columns(), r.columns()));
    }

    #[test]
    fn integral_and_rational_lll_agree(b in independent_basis(5, 1000)) {
        let alpha = BigRational::new(3.into(), 4.into());
        prop_assert_eq!(lll(&b, &alpha).unwrap(), lll_rational(&b, &alpha).unwrap());
    }

    #[test]
    fn rounding_interval(p in -10_000i64..10_000, q in 1i64..500) {
        let x = BigRational::new(p.into(), q.into());
        let z = BigRational::from_integer(nearest_integer(&x));
        let half = BigRational::new(1.into(), 2.into());
        prop_assert!(&z - &x >= -&half && &z - &x < half);
        let s = BigRational::from_integer(round(&x, Rounding::HalfAwayFromZero));
        prop_assert!((&s - &x) <= half && (&s - &x) >= -half);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// ‖b_1‖² ≤ β^{n−1}·λ₁² with β = 4/(4α − 1), λ₁ found by enumeration.
    #[test]
    fn first_vector_length_bound(b in independent_basis(3, 30)) {
        let alpha = default_alpha();
        let r = lll(&b, &alpha).unwrap();
        let shortest = shortest_vector_norm_sq(r.columns(), 6);
        let first: BigInt = r.column(0).iter().map(|v| v * v).sum();
        let beta = BigRational::new(4.into(), 1.into()) / (BigRational::new(4.into(), 1.into()) * &alpha - BigRational::new(1.into(), 1.into()));
        let mut bound = BigRational::from_integer(shortest);
        for _ in 1..r.len() {
            bound *= &beta;
        }
        prop_assert!(BigRational::from_integer(first) <= bound);
    }
}

#[test]
fn skewed_basis_first_column_is_short() {
    let b = LatticeBasis::from_i64_columns(&[&[1, 0], &[99, 1]]).unwrap();
    let r = lll(&b, &BigRational::new(3.into(), 4.into())).unwrap();
    let n0: BigInt = r.column(0).iter().map(|v| v * v).sum();
    assert!(n0 <= BigInt::from(2));
    assert_eq!(shortest_vector_norm_sq(b.columns(), 200), BigInt::from(1));
}

#[test]
fn identity_is_fixed() {
    let b = LatticeBasis::from_i64_columns(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
    assert_eq!(lll(&b, &BigRational::new(3.into(), 4.into())).unwrap(), b);
}

#[test]
fn two_column_gso_values() {
    let g = gso(&LatticeBasis::from_i64_columns(&[&[1, 1], &[1, 0]]).unwrap()).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    assert_eq!(g.mu[1][0], half);
    assert_eq!(g.bstar[1], vec![half.clone(), -half]);
    let reduced = gso_after_reduce(&g, 1, 0, &BigInt::from(1)).unwrap();
    assert_eq!(reduced.mu[1][0], BigRational::new((-1).into(), 2.into()));
    assert_eq!(reduced.bstar, g.bstar);
    assert_eq!(
        gso(&LatticeBasis::from_i64_columns(&[&[2, 0], &[1, 0]]).unwrap()),
        Err(Error::DependentColumns { column: 1 })
    );
}

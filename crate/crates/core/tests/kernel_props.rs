use knapcrack_core::kernel::{decompose, default_scale, special_solution};
use knapcrack_core::lattice::default_alpha;
use knapcrack_core::linalg::{determinant, mat_vec};
use knapcrack_core::problem::{LdeSystem, SubsetSumInstance};
use knapcrack_core::reduce::{reduce, reduce_half, reduce_half_with, reduce_with};
use knapcrack_core::rounding::Rounding;
use knapcrack_core::{ints, BigInt};
use knapcrack_testkit::{in_lattice, integer_kernel, integer_solution_in_box, same_lattice};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_system(max_n: usize) -> impl Strategy<Value = LdeSystem> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::vec(1i64..=20, n), m),
                proptest::collection::vec(0i64..=40, m),
            )
        })
        .prop_filter_map("rank deficient", |(rows, rhs)| {
            let rows = rows.iter().map(|r| ints(r)).collect();
            LdeSystem::new(rows, ints(&rhs)).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_contract(sys in small_system(5)) {
        let kd = decompose(&sys, &default_scale(), &default_alpha()).unwrap();
        for col in &kd.d {
            prop_assert!(mat_vec(sys.rows(), col).iter().all(Zero::is_zero));
        }
        for (j, col) in kd.c.iter().enumerate() {
            let ac = mat_vec(sys.rows(), col);
            let e_col: Vec<BigInt> = kd.e.iter().map(|r| r[j].clone()).collect();
            prop_assert_eq!(ac, e_col);
        }
        prop_assert_eq!(determinant(&kd.unimodular_part()).abs(), BigInt::from(1));
        let oracle = integer_kernel(sys.rows());
        prop_assert!(same_lattice(&kd.d, &oracle));
        for v in &oracle {
            prop_assert!(in_lattice(&kd.d, v));
        }
    }

    #[test]
    fn special_solution_iff_solvable(sys in small_system(4)) {
        let kd = decompose(&sys, &default_scale(), &default_alpha()).unwrap();
        let xb = special_solution(&kd, sys.rhs()).unwrap();
        let brute = integer_solution_in_box(sys.rows(), sys.rhs(), 10);
        if let Some(x) = &xb {
            prop_assert!(sys.is_solution(x));
        }
        // The box search only certifies solvability; membership of b in the
        // column lattice of A decides it.
        if brute.is_some() {
            prop_assert!(xb.is_some());
        }
        let a_cols: Vec<Vec<BigInt>> = (0..sys.n()).map(|j| sys.rows().iter().map(|r| r[j].clone()).collect()).collect();
        prop_assert_eq!(xb.is_some(), in_lattice(&a_cols, sys.rhs()));
    }

    #[test]
    fn reduce_is_independent_of_the_particular_solution(sys in small_system(5), shifts in proptest::collection::vec(-5i64..=5, 8)) {
        let kd = decompose(&sys, &default_scale(), &default_alpha()).unwrap();
        let Some(xb) = special_solution(&kd, sys.rhs()).unwrap() else { return Ok(()); };
        let base = reduce(&xb, &kd.d).unwrap();
        let base_half = reduce_half(&xb, &kd.d).unwrap();
        prop_assert!(sys.is_solution(&base));
        prop_assert!(sys.is_solution(&base_half));
        let mut y = xb.clone();
        for (z, col) in shifts.iter().zip(&kd.d) {
            for (yi, ci) in y.iter_mut().zip(col) {
                *yi += ci * *z;
            }
        }
        prop_assert_eq!(reduce(&y, &kd.d).unwrap(), base);
        prop_assert_eq!(reduce_half(&y, &kd.d).unwrap(), base_half);
    }

    #[test]
    fn reduce_ignores_column_signs(sys in small_system(5), mask in 0u32..16) {
        let kd = decompose(&sys, &default_scale(), &default_alpha()).unwrap();
        let Some(xb) = special_solution(&kd, sys.rhs()).unwrap() else { return Ok(()); };
        let mode = Rounding::HalfAwayFromZero;
        let flipped: Vec<Vec<BigInt>> = kd.d.iter().enumerate()
            .map(|(j, c)| if mask >> j & 1 == 1 { c.iter().map(|v| -v).collect() } else { c.clone() })
            .collect();
        prop_assert_eq!(reduce_with(&xb, &flipped, mode).unwrap(), reduce_with(&xb, &kd.d, mode).unwrap());
        prop_assert_eq!(reduce_half_with(&xb, &flipped, mode).unwrap(), reduce_half_with(&xb, &kd.d, mode).unwrap());
    }
}

#[test]
fn toy_reduce_difference_is_a_kernel_vector() {
    let sys = SubsetSumInstance::from_i64(&[3, 15, 6], 9).unwrap().to_system();
    let kd = decompose(&sys, &default_scale(), &default_alpha()).unwrap();
    let xb = special_solution(&kd, sys.rhs()).unwrap().unwrap();
    let r = reduce(&xb, &kd.d).unwrap();
    let diff: Vec<BigInt> = xb.iter().zip(&r).map(|(a, b)| a - b).collect();
    assert!(knapcrack_core::linalg::lattice_coordinates(&kd.d, &diff).is_some());
}

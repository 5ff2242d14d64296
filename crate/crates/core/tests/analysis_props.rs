use knapcrack_core::analysis::{
    gamma, lambda_tilde, lattice_volume, min_volume_ellipsoid, project_preserving_gram, rect_distance,
    rect_distance_normalized, singular_values,
};
use knapcrack_core::kernel::{decompose, default_scale};
use knapcrack_core::lattice::default_alpha;
use knapcrack_core::linalg::gram;
use knapcrack_core::problem::LdeSystem;
use knapcrack_core::{ints, BigInt};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn random_kernel() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (3usize..=8)
        .prop_flat_map(|n| (proptest::collection::vec(1i64..=200, n), Just(n)))
        .prop_filter_map("invalid", |(a, _n)| {
            let sys = LdeSystem::new(vec![ints(&a)], ints(&[1])).ok()?;
            Some(decompose(&sys, &default_scale(), &default_alpha()).ok()?.d)
        })
}

fn full_rank(max_n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    (2usize..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, s)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), s))
        .prop_filter_map("rank deficient", |cols| {
            let cols: Vec<Vec<BigInt>> = cols.iter().map(|c| ints(c)).collect();
            (knapcrack_core::linalg::rank(&cols) == cols.len()).then_some(cols)
        })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mve_volume_is_gamma_times_volume(d in random_kernel()) {
        let e = min_volume_ellipsoid(&d).unwrap();
        let v = lattice_volume(&d).unwrap();
        prop_assert!(rel(e.volume, gamma(d.len()) * v) < 1e-6);
        prop_assert!(e.semi_axes.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(e.semi_axes.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn semi_axes_scale_singular_values(d in full_rank(6)) {
        let e = min_volume_ellipsoid(&d).unwrap();
        let sv = singular_values(&d).unwrap();
        let r = (d.len() as f64).sqrt() / 2.0;
        for (a, s) in e.semi_axes.iter().zip(&sv) {
            prop_assert!(rel(*a, r * s) < 1e-9);
        }
    }

    #[test]
    fn projection_preserves_gram(d in full_rank(6)) {
        let s = project_preserving_gram(&d).unwrap();
        let g = gram(&d);
        for i in 0..d.len() {
            for j in 0..d.len() {
                let dot: f64 = s[i].iter().zip(&s[j]).map(|(a, b)| a * b).sum();
                let want = g[i][j].to_f64().unwrap();
                let scale = (g[i][i].to_f64().unwrap() * g[j][j].to_f64().unwrap()).sqrt();
                prop_assert!((dot - want).abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn rect_distance_invariances(d in full_rank(6), perm_seed in any::<u64>(), signs in any::<u32>(), scale in 1i64..6) {
        let mut perm: Vec<usize> = (0..d.len()).collect();
        let mut seed = perm_seed;
        for i in (1..perm.len()).rev() {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (seed >> 33) as usize % (i + 1));
        }
        let moved: Vec<Vec<BigInt>> = perm.iter().enumerate()
            .map(|(k, &i)| d[i].iter().map(|v| if signs >> k & 1 == 1 { -v } else { v.clone() }).collect())
            .collect();
        prop_assert!(rel(rect_distance(&moved), rect_distance(&d)) < 1e-12 || rect_distance(&d) == 0.0);
        let scaled: Vec<Vec<BigInt>> = d.iter().enumerate()
            .map(|(k, c)| if k == 0 { c.iter().map(|v| v * scale).collect() } else { c.clone() })
            .collect();
        prop_assert!((rect_distance_normalized(&scaled) - rect_distance_normalized(&d)).abs() < 1e-9);
        prop_assert!(lambda_tilde(&d).unwrap() >= 1.0 - 1e-12);
    }
}

#[test]
#[allow(clippy::approx_constant)] // tabulated values, not π/2
fn gamma_table_values() {
    for (s, g) in [(2, 1.5708), (3, 2.7207), (4, 4.9348), (5, 9.1955), (6, 17.4410), (7, 33.4976)] {
        assert!((gamma(s) - g).abs() < 1e-3);
    }
}

#[test]
fn orthogonal_columns() {
    let d = vec![ints(&[3, 0, 0]), ints(&[0, 0, 5])];
    assert_eq!(rect_distance(&d), 0.0);
    assert_eq!(rect_distance_normalized(&d), 0.0);
    assert!((lambda_tilde(&d).unwrap() - 1.0).abs() < 1e-12);
    let s = project_preserving_gram(&d).unwrap();
    assert!((s[0].iter().map(|v| v * v).sum::<f64>() - 9.0).abs() < 1e-12);
}

use knapcrack::brute::brute_force_solve;
use knapcrack::generate::{generate_instance, generate_system};
use knapcrack::pipeline::{attack, run, Algo, SearchConfig, TSearch};
use knapcrack_core::attacks::VerdictStatus;
use knapcrack_core::problem::LdeSystem;
use knapcrack_core::{ints, BigInt};

fn to_bits(x: &[BigInt]) -> Vec<u8> {
    x.iter().map(|v| u8::try_from(v).expect("binary entry")).collect()
}

#[test]
fn binary_verdicts_are_brute_force_solutions() {
    for (m, n) in [(1, 10), (1, 14), (2, 12), (3, 16)] {
        for seed in 0..6 {
            let g = generate_system(m, n, 40 + seed).unwrap();
            let all = brute_force_solve(&g.system).unwrap();
            assert!(all.contains(&g.planted));
            for algo in Algo::ALL {
                for dag in [false, true] {
                    let mut cfg = SearchConfig::new(algo);
                    if dag {
                        cfg = cfg.with_dag(BigInt::from(1000), 60);
                    }
                    let out = run(&g.system, &cfg).unwrap();
                    if let VerdictStatus::BinarySolution(x) = out.verdict.status() {
                        assert!(all.contains(&to_bits(x)), "{algo} m={m} n={n} seed={seed}");
                    }
                    if let Some(x) = out.verdict.solution() {
                        assert!(g.system.is_solution(x));
                    }
                }
            }
        }
    }
}

#[test]
fn reduce_and_ahl_return_the_same_vector() {
    for n in [8, 12, 16] {
        for seed in 0..10 {
            let (inst, _) = generate_instance(n, 300 + seed).unwrap();
            let sys = inst.to_system();
            let r = attack(&sys, &SearchConfig::new(Algo::Reduce)).unwrap().verdict;
            let a = attack(&sys, &SearchConfig::new(Algo::Ahl)).unwrap().verdict;
            assert_eq!(r.solution(), a.solution(), "n={n} seed={seed}");
        }
    }
}

#[test]
fn two_row_system_sequential_search_on_first_row() {
    let sys = LdeSystem::from_i64(&[&[63, 9, 34, 46, 2, 55], &[51, 19, 12, 44, 3, 25]], &[99, 66]).unwrap();
    let cfg = SearchConfig::new(Algo::Reduce).with_dag(BigInt::from(63), 62);
    let out = run(&sys, &cfg).unwrap();
    assert_eq!(out.verdict.solution(), Some(&ints(&[1, 0, 1, 0, 1, 0])[..]));
    assert_eq!(out.t_found, Some(BigInt::from(1)));
}

#[test]
fn jump_point_search_agrees_with_brute_force() {
    for seed in 0..5 {
        let g = generate_system(1, 12, 900 + seed).unwrap();
        let mut cfg = SearchConfig::new(Algo::Reduce).with_dag(BigInt::from(1000), 1);
        cfg.search = TSearch::JumpPoints { limit: Some(400) };
        let out = run(&g.system, &cfg).unwrap();
        if let VerdictStatus::BinarySolution(x) = out.verdict.status() {
            assert!(brute_force_solve(&g.system).unwrap().contains(&to_bits(x)));
        }
    }
}

#[test]
fn t_found_only_when_the_first_attack_failed() {
    for seed in 0..10 {
        let g = generate_system(1, 16, 2000 + seed).unwrap();
        let plain = attack(&g.system, &SearchConfig::new(Algo::ReduceHalf)).unwrap();
        let cfg = SearchConfig::new(Algo::ReduceHalf).with_dag(BigInt::from(1000), 200);
        let out = run(&g.system, &cfg).unwrap();
        assert_eq!(out.t_found.is_some(), !plain.verdict.is_binary());
    }
}

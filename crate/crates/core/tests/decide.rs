mod common;

use common::*;
use entdis::certify::{verify_certificate, Direction};
use entdis::search::{decide, decide_direction, OptimizerConfig, Verdict};
use entdis::states::{bell_set, theorem1_set, theorem2_set};
use entdis::{PauliIndex, Theorem2Spec};

fn p(m: usize, n: usize) -> PauliIndex {
    PauliIndex { m, n }
}

#[test]
fn fourier_cover_sets_are_indistinguishable_both_ways() {
    let set = theorem1_set(dim(9)).unwrap();
    let report = decide(&set, &OptimizerConfig::default()).unwrap();
    assert!(report.one_way_indistinguishable);
    for r in &report.directions {
        assert_eq!(r.verdict, "indistinguishable");
        let cert = r.certificate.as_ref().unwrap();
        assert_eq!(cert.kind(), "fourier_cover");
        assert!(verify_certificate(cert, &set).is_valid());
        assert_eq!(r.best_residual, None);
    }
}

#[test]
fn block_construction_is_indistinguishable() {
    let set = theorem2_set(&Theorem2Spec::with_defaults(dim(7)).unwrap()).unwrap();
    let report = decide(&set, &OptimizerConfig::default()).unwrap();
    assert!(report.one_way_indistinguishable);
    for r in &report.directions {
        let cert = r.certificate.as_ref().unwrap();
        assert_eq!(cert.kind(), "forced_block");
        assert!(verify_certificate(cert, &set).is_valid());
    }
}

#[test]
fn three_bell_states_in_d3_are_distinguishable() {
    let set = bell_set(dim(3), &[p(0, 0), p(1, 0), p(0, 1)]).unwrap();
    for dir in Direction::BOTH {
        match decide_direction(&set, dir, &OptimizerConfig::default()).unwrap() {
            Verdict::Distinguishable {
                witness,
                povm,
                simulated_success,
            } => {
                assert!(witness.residual < 1e-12);
                assert!(povm.identity_residual() < 1e-8);
                assert_eq!(simulated_success, 1.0);
            }
            v => panic!("{dir:?}: {}", v.label()),
        }
    }
}

#[test]
fn clock_only_set_is_distinguishable() {
    let set = bell_set(dim(4), &(0..4).map(|m| p(m, 0)).collect::<Vec<_>>()).unwrap();
    let v = decide_direction(&set, Direction::AToB, &OptimizerConfig::default()).unwrap();
    assert_eq!(v.label(), "distinguishable");
}

#[test]
fn random_pairs_are_perfectly_distinguishable() {
    let mut rng = rng(2024);
    let cfg = OptimizerConfig {
        restarts: 8,
        ..Default::default()
    };
    for d in 4..=8 {
        for _ in 0..5 {
            let set = random_bell(&mut rng, d, 2);
            match decide_direction(&set, Direction::AToB, &cfg).unwrap() {
                Verdict::Distinguishable {
                    simulated_success, ..
                } => assert_eq!(simulated_success, 1.0),
                v => panic!("d={d}: {}", v.label()),
            }
        }
    }
}

#[test]
fn report_json_is_deterministic() {
    let set = bell_set(dim(3), &[p(0, 0), p(1, 0), p(0, 1)]).unwrap();
    let cfg = OptimizerConfig {
        restarts: 16,
        seed: 5,
        ..Default::default()
    };
    let a = serde_json::to_string(&decide(&set, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&decide(&set, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn certified_sets_never_come_back_distinguishable() {
    for d in 4..=12 {
        let set = theorem1_set(dim(d)).unwrap();
        let report = decide(
            &set,
            &OptimizerConfig {
                restarts: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(report
            .directions
            .iter()
            .all(|r| r.verdict != "distinguishable"));
    }
}

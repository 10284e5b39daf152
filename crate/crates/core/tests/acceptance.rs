//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::time::{Duration, Instant};

use common::*;
use entdis::certify::{
    block_identity_prover, constraints_from_set, fourier_cover_prover, hermitian_feasible_subspace,
    verify_certificate, BlockOutcome, CoverOutcome, Direction, Proof,
};
use entdis::gpauli::{adjoint_product, all_indices, to_matrix};
use entdis::linalg::{hs_inner, max_abs_diff, unitarity_defect, CMatrix};
use entdis::search::{
    decide, decide_direction, orbit_povm, search_all, simulate_protocol, witness_search,
};
use entdis::search::{OptimizerConfig, Verdict};
use entdis::states::{bell_set, ceil_sqrt, check_maximally_entangled, theorem1_set, theorem2_set};
use entdis::sweep::sweep;
use entdis::{Error, PauliIndex, Theorem2Spec, UnitarySet};
use num_complex::Complex64;
use rand::Rng;

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Failure(format!($($fmt)+)));
        }
    };
}

/// Reads phase exponent and label off a dense product `c·U_{mn}`.
fn decompose(d: usize, w: &CMatrix) -> (usize, PauliIndex) {
    let n = (0..d)
        .max_by(|&a, &b| w[(a, 0)].norm().total_cmp(&w[(b, 0)].norm()))
        .unwrap();
    let step = 2.0 * std::f64::consts::PI / d as f64;
    let c = w[(n, 0)];
    let k = ((c.arg() / step).round() as i64).rem_euclid(d as i64) as usize;
    let ratio = w[((1 + n) % d, 1)] / c;
    let m = ((ratio.arg() / step).round() as i64).rem_euclid(d as i64) as usize;
    (k, PauliIndex { m, n })
}

fn algebra_exactness() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in 2..=8 {
        let dd = dim(d);
        let dense: Vec<(PauliIndex, CMatrix)> =
            all_indices(dd).map(|p| (p, dense_pauli(d, p))).collect();
        for (a, ua) in &dense {
            for (b, ub) in &dense {
                let want = ua.adjoint() * ub;
                let got = adjoint_product(dd, *a, *b);
                let (k, idx) = decompose(d, &want);
                ensure!(
                    got.phase.0 == k && got.index == idx,
                    "d={d} {a}†{b}: got {got:?}, dense says ω^{k} {idx}"
                );
                worst = worst.max(max_abs_diff(&to_matrix(dd, got), &want));
            }
        }
    }
    ensure!(worst < 1e-12, "entrywise error {worst:e}");
    for d in 2..=16 {
        let z = dense_pauli(d, PauliIndex { m: 1, n: 0 });
        let x = dense_pauli(d, PauliIndex { m: 0, n: 1 });
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
        let e = max_abs_diff(&(&z * &x), &(&x * &z * omega));
        ensure!(e < 1e-12, "Weyl relation off by {e:e} at d={d}");
    }
    Ok(format!(
        "d=2..8 all pairs exact, max entry error {worst:.1e}; ZX=ωXZ for d<=16"
    ))
}

fn fourier_cover_reproduction() -> Outcome {
    let mut slowest = Duration::ZERO;
    for d in 4..=20 {
        let t = Instant::now();
        let set = theorem1_set(dim(d))?;
        ensure!(
            set.max_overlap() < 1e-10,
            "d={d}: overlap {:e}",
            set.max_overlap()
        );
        let s = ceil_sqrt(d);
        let want = if d == s * (s - 1) {
            3 * s - 3
        } else {
            3 * s - 1
        };
        ensure!(set.len() == want, "d={d}: size {} != {want}", set.len());
        for dir in Direction::BOTH {
            let examined = dir.apply(&set);
            let c = constraints_from_set(&examined.indices().unwrap(), dim(d))?;
            let CoverOutcome::Certificate(cert) = fourier_cover_prover(&c) else {
                return Err(Failure(format!("d={d} {dir:?}: cover prover inconclusive")));
            };
            let full = entdis::certify::Certificate::new(Proof::FourierCover(cert), dir, &set);
            ensure!(
                verify_certificate(&full, &set).is_valid(),
                "d={d} {dir:?}: verifier rejects"
            );
        }
        slowest = slowest.max(t.elapsed());
    }
    ensure!(
        slowest < Duration::from_secs(1),
        "slowest d took {slowest:?}"
    );
    Ok(format!(
        "d=4..20 certified and verified both ways, slowest {slowest:.1?}"
    ))
}

fn block_reproduction() -> Outcome {
    let mut slowest = Duration::ZERO;
    for d in [7, 9, 11] {
        let t = Instant::now();
        let set = theorem2_set(&Theorem2Spec::with_defaults(dim(d))?)?;
        ensure!(set.len() == 4, "d={d}: {} members", set.len());
        ensure!(
            set.max_unitarity_defect() < 1e-12,
            "d={d}: unitarity {:e}",
            set.max_unitarity_defect()
        );
        for (i, u) in set.members().iter().enumerate() {
            ensure!(unitarity_defect(u) < 1e-12, "d={d}: member {i} not unitary");
            for v in &set.members()[i + 1..] {
                let tr = hs_inner(u, v).norm();
                ensure!(tr < 1e-12, "d={d}: trace overlap {tr:e}");
            }
            ensure!(
                check_maximally_entangled(dim(d), &set.state_vector(i))?,
                "d={d}: state {i} not maximally entangled"
            );
        }
        let fs = hermitian_feasible_subspace(&set)?;
        let BlockOutcome::Certificate(cert) = block_identity_prover(&fs, &[0, 1], 1e-8)? else {
            return Err(Failure(format!("d={d}: block {{0,1}} not forced")));
        };
        let worst = cert.forced_functionals.iter().cloned().fold(0.0, f64::max);
        ensure!(worst < 1e-8, "d={d}: residual {worst:e}");
        let report = decide(&set, &OptimizerConfig::default())?;
        ensure!(
            report.one_way_indistinguishable,
            "d={d}: decide did not certify both directions"
        );
        slowest = slowest.max(t.elapsed());
    }
    ensure!(
        slowest < Duration::from_secs(5),
        "slowest d took {slowest:?}"
    );
    Ok(format!(
        "d=7,9,11 orthogonal, block forced, decided indistinguishable; slowest {slowest:.1?}"
    ))
}

fn phase_gate() -> Outcome {
    for gamma in [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
        let one = Complex64::new(1.0, 0.0);
        match Theorem2Spec::new(dim(7), one, gamma, one) {
            Err(Error::Input(_)) => {}
            other => {
                return Err(Failure(format!(
                    "γ={gamma}: expected input error, got {other:?}"
                )))
            }
        }
    }
    Ok("γ=±i rejected as input errors (exit code 2 at the command line)".into())
}

fn distinguishable_controls() -> Outcome {
    let t = Instant::now();
    let cfg = OptimizerConfig::default();
    let mut rng = rng(5);
    let (mut worst_res, mut worst_id): (f64, f64) = (0.0, 0.0);
    for d in 4..=8 {
        for trial in 0..50 {
            let set = random_bell(&mut rng, d, 2);
            let w = witness_search(&set, &cfg)?;
            let povm = orbit_povm(&w.alpha);
            let rate = simulate_protocol(&set, &povm, 10_000, trial)?;
            worst_res = worst_res.max(w.residual);
            worst_id = worst_id.max(povm.identity_residual());
            ensure!(rate == 1.0, "d={d} trial {trial}: success {rate}");
        }
    }
    ensure!(
        worst_res < 1e-10 && worst_id < 1e-10,
        "pairs: residual {worst_res:e}, identity {worst_id:e}"
    );

    let labels: Vec<PauliIndex> = all_indices(dim(3)).collect();
    let mut triples = 0;
    let mut worst3: f64 = 0.0;
    for a in 0..9 {
        for b in a + 1..9 {
            for c in b + 1..9 {
                let set = bell_set(dim(3), &[labels[a], labels[b], labels[c]])?;
                worst3 = worst3.max(witness_search(&set, &cfg)?.residual);
                triples += 1;
            }
        }
    }
    ensure!(
        triples == 84 && worst3 < 1e-9,
        "{triples} triples, worst residual {worst3:e}"
    );

    let clock = bell_set(
        dim(4),
        &(0..4).map(|m| PauliIndex { m, n: 0 }).collect::<Vec<_>>(),
    )?;
    let c = constraints_from_set(&clock.indices().unwrap(), dim(4))?;
    ensure!(
        matches!(fourier_cover_prover(&c), CoverOutcome::Inconclusive),
        "cover prover certified the clock set"
    );
    let v = decide_direction(&clock, Direction::AToB, &cfg)?;
    ensure!(
        matches!(v, Verdict::Distinguishable { .. }),
        "clock set: {}",
        v.label()
    );

    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!(
        "250 pairs at success 1.0 (residual {worst_res:.1e}, identity {worst_id:.1e}); 84 triples below {worst3:.1e}; \
         clock set distinguishable; {elapsed:.1?}"
    ))
}

fn prover_search_consistency() -> Outcome {
    let cfg = OptimizerConfig::default();
    let mut floors = Vec::new();
    let mut record = |name: String, set: &UnitarySet| -> Result<(), Error> {
        for dir in Direction::BOTH {
            let run = search_all(&dir.apply(set), &cfg)?;
            floors.push((format!("{name} {}", dir.as_str()), run.best().residual));
        }
        Ok(())
    };
    for d in 4..=20 {
        record(format!("cover d={d}"), &theorem1_set(dim(d))?)?;
    }
    for d in [7, 9, 11] {
        record(
            format!("block d={d}"),
            &theorem2_set(&Theorem2Spec::with_defaults(dim(d))?)?,
        )?;
    }
    let below: Vec<String> = floors
        .iter()
        .filter(|(_, f)| !(*f > 1e-4))
        .map(|(n, f)| format!("{n} reached {f:.1e}"))
        .collect();
    let cover_floor = floors
        .iter()
        .filter(|(n, _)| n.starts_with("cover"))
        .map(|(_, f)| *f)
        .fold(f64::INFINITY, f64::min);
    if below.is_empty() {
        Ok(format!(
            "all floors above 1e-4; lowest cover-set floor {cover_floor:.2e}"
        ))
    } else {
        Err(Failure(format!(
            "lowest cover-set floor {cover_floor:.2e}; below 1e-4: {}",
            below.join(", ")
        )))
    }
}

fn numerical_hygiene() -> Outcome {
    let mut rng = rng(17);
    let mut worst: f64 = 0.0;
    for sample in 0..100 {
        let d = rng.random_range(2..=8);
        let set = if sample % 3 == 0 && d >= 4 {
            theorem1_set(dim(d))?
        } else {
            let k = rng.random_range(2..=d.min(5));
            random_bell(&mut rng, d, k)
        };
        let alpha = random_unit(&mut rng, d);
        worst = worst.max(gradient_error(&alpha, &set));
    }
    ensure!(worst < 1e-6, "gradient relative error {worst:e}");
    let mut twirl: f64 = 0.0;
    for d in 2..=6 {
        twirl = twirl.max(twirl_error(d, &mut rng));
    }
    ensure!(twirl < 1e-10, "twirl error {twirl:e}");
    Ok(format!(
        "gradient relative error {worst:.1e} over 100 samples; twirl error {twirl:.1e}"
    ))
}

fn size_table() -> Outcome {
    let rows = sweep(4, 60)?;
    for r in rows.iter().filter(|r| r.d >= 30) {
        ensure!(
            r.nominal <= r.half_plus_two,
            "d={}: {} > {}",
            r.d,
            r.nominal,
            r.half_plus_two
        );
    }
    let r30 = rows.iter().find(|r| r.d == 30).unwrap();
    ensure!(
        r30.nominal == 17 && r30.half_plus_two == 17,
        "d=30 row {r30:?}"
    );
    ensure!(
        rows.iter().all(|r| r.certificate_found),
        "some row lacks a certificate"
    );
    Ok("d>=30 rows satisfy the bound; d=30 gives 17 = 17; all 57 rows certified".into())
}

fn determinism() -> Outcome {
    let set = theorem1_set(dim(9))?;
    let cfg = OptimizerConfig {
        seed: 0,
        ..Default::default()
    };
    let a = serde_json::to_string(&decide(&set, &cfg)?).unwrap();
    let b = serde_json::to_string(&decide(&set, &cfg)?).unwrap();
    ensure!(a == b, "verdict JSON differs between runs");
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("algebra exactness", algebra_exactness),
        ("Fourier-cover sets d=4..20", fourier_cover_reproduction),
        ("block construction d=7,9,11", block_reproduction),
        ("phase-condition gate", phase_gate),
        ("distinguishable controls", distinguishable_controls),
        ("prover/search consistency", prover_search_consistency),
        ("numerical hygiene", numerical_hygiene),
        ("size table", size_table),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(msg) => ("PASS", msg),
            Err(Failure(msg)) => {
                failed += 1;
                ("FAIL", msg)
            }
        };
        println!(
            "{tag} criterion {}: {name}: {detail} [{:.1?}]",
            i + 1,
            t.elapsed()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

mod common;

use common::*;
use entdis::search::penalty::{penalty, penalty_dense};
use entdis::states::{theorem1_set, theorem2_set};
use entdis::Theorem2Spec;
use rand::Rng;

#[test]
fn gradient_matches_central_differences() {
    let mut rng = rng(7);
    let t2 = theorem2_set(&Theorem2Spec::with_defaults(dim(7)).unwrap()).unwrap();
    for sample in 0..100 {
        let set = match sample % 4 {
            0 => theorem1_set(dim(rng.random_range(4..10))).unwrap(),
            1 => t2.clone(),
            _ => {
                let d = rng.random_range(2..8);
                let k = rng.random_range(2..=d.min(5));
                random_bell(&mut rng, d, k)
            }
        };
        let alpha = random_unit(&mut rng, set.d().get());
        let err = gradient_error(&alpha, &set);
        assert!(err < 1e-6, "sample {sample}: relative error {err:e}");
    }
}

#[test]
fn penalty_matches_dense_oracle() {
    let mut rng = rng(3);
    for d in 2..9 {
        let set = random_bell(&mut rng, d, d.min(4));
        let alpha = random_unit(&mut rng, d);
        let (f, _) = penalty(&alpha, &set).unwrap();
        assert!((f - penalty_dense(&alpha, &set)).abs() < 1e-12);
    }
}

#[test]
fn twirl_identity() {
    let mut rng = rng(11);
    for d in 2..=6 {
        let e = twirl_error(d, &mut rng);
        assert!(e < 1e-10, "d={d}: {e:e}");
    }
}

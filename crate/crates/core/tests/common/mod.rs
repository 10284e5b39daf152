#![allow(dead_code)]

use entdis::gpauli::{all_indices, to_matrix};
use entdis::linalg::{max_abs_diff, CMatrix, CVector};
use entdis::search::penalty::{penalty, penalty_dense};
use entdis::states::bell_set;
use entdis::{Dimension, PauliIndex, PhasedPauli, UnitarySet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> CVector {
    let v = CVector::from_fn(d, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

pub fn random_indices(rng: &mut ChaCha8Rng, d: usize, k: usize) -> Vec<PauliIndex> {
    let mut idx: Vec<PauliIndex> = Vec::new();
    while idx.len() < k {
        let p = PauliIndex {
            m: rng.random_range(0..d),
            n: rng.random_range(0..d),
        };
        if !idx.contains(&p) {
            idx.push(p);
        }
    }
    idx
}

pub fn random_bell(rng: &mut ChaCha8Rng, d: usize, k: usize) -> UnitarySet {
    let idx = random_indices(rng, d, k);
    bell_set(dim(d), &idx).unwrap()
}

/// Dense `U_{mn}` built entry by entry from `U|j⟩ = ω^{mj}|j+n⟩`.
pub fn dense_pauli(d: usize, p: PauliIndex) -> CMatrix {
    let mut u = CMatrix::zeros(d, d);
    for j in 0..d {
        let angle = 2.0 * std::f64::consts::PI * ((p.m * j) % d) as f64 / d as f64;
        u[((j + p.n) % d, j)] = Complex64::from_polar(1.0, angle);
    }
    u
}

/// Max relative error between the analytic gradient and central differences
/// of `α ↦ f(α/‖α‖)` along each real coordinate.
pub fn gradient_error(alpha: &CVector, set: &UnitarySet) -> f64 {
    let h = 1e-6;
    let (_, grad) = penalty(alpha, set).unwrap();
    let f = |x: &CVector| penalty_dense(&x.normalize(), set);
    let mut diff: f64 = 0.0;
    for k in 0..alpha.len() {
        for (unit, analytic) in [
            (Complex64::new(1.0, 0.0), grad[k].re),
            (Complex64::new(0.0, 1.0), grad[k].im),
        ] {
            let mut plus = alpha.clone();
            let mut minus = alpha.clone();
            plus[k] += unit * h;
            minus[k] -= unit * h;
            let fd = (f(&plus) - f(&minus)) / (2.0 * h);
            diff = diff.max((fd - analytic).abs());
        }
    }
    diff / grad.norm().max(1e-3)
}

/// `‖Σ_{ab} U_ab ρ U_ab† − d·Tr(ρ)·I‖_max` for a random `ρ`.
pub fn twirl_error(d: usize, rng: &mut ChaCha8Rng) -> f64 {
    let dd = dim(d);
    let rho = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.random::<f64>(), rng.random::<f64>())
    });
    let mut sum = CMatrix::zeros(d, d);
    for p in all_indices(dd) {
        let u = to_matrix(dd, PhasedPauli::unphased(p));
        sum += &u * &rho * u.adjoint();
    }
    let expected = CMatrix::identity(d, d) * (rho.trace() * d as f64);
    max_abs_diff(&sum, &expected)
}

//! Random-restart descent for a witness: a unit `α` whose images `U_i α`
//! are pairwise orthogonal.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::penalty::PenaltyEval;
use crate::error::{Error, Result};
use crate::linalg::{complex_vec, CVector, ZERO};
use crate::states::UnitarySet;

/// Stop once the Riemannian gradient norm falls below this.
pub const GRADIENT_TOL: f64 = 1e-12;
/// Witnesses are polished past `success_tol` down to this residual.
pub const POLISH_TOL: f64 = 1e-28;
const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub success_tol: f64,
    pub failure_floor: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 64,
            max_iterations: 2000,
            success_tol: 1e-12,
            failure_floor: 1e-6,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Input("restarts must be at least 1".into()));
        }
        if !(self.success_tol > 0.0 && self.success_tol < self.failure_floor) {
            return Err(Error::Input(format!(
                "need 0 < success_tol ({}) < failure_floor ({})",
                self.success_tol, self.failure_floor
            )));
        }
        Ok(())
    }

    /// Per-restart stream: `seed ⊕ restart`.
    pub fn restart_seed(&self, restart: usize) -> u64 {
        self.seed ^ restart as u64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub d: usize,
    #[serde(with = "complex_vec")]
    pub alpha: CVector,
    pub residual: f64,
    pub restart: usize,
    pub iterations: usize,
}

/// All restarts of one search, in restart order.
#[derive(Clone, Debug)]
pub struct SearchRun {
    pub runs: Vec<Witness>,
}

impl SearchRun {
    /// Lowest residual; ties go to the lowest restart index.
    pub fn best(&self) -> &Witness {
        self.runs
            .iter()
            .min_by(|a, b| {
                a.residual
                    .total_cmp(&b.residual)
                    .then(a.restart.cmp(&b.restart))
            })
            .expect("at least one restart")
    }

    pub fn below(&self, tol: f64) -> impl Iterator<Item = &Witness> {
        self.runs.iter().filter(move |w| w.residual < tol)
    }
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng, d: usize) -> CVector {
    let v = CVector::from_fn(d, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    });
    let n = v.norm();
    v.map(|z| z / n)
}

fn normalize(v: &mut [Complex64]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= n);
}

/// One projected-gradient descent with Barzilai–Borwein trial steps and
/// Armijo backtracking, renormalizing to the sphere after every step.
pub fn descend(set: &UnitarySet, start: CVector, cfg: &OptimizerConfig, restart: usize) -> Witness {
    let d = set.d().get();
    let mut eval = PenaltyEval::new(set);
    let mut alpha: Vec<Complex64> = start.iter().copied().collect();
    let mut grad = vec![ZERO; d];
    let mut f = eval.value_and_gradient(&alpha, &mut grad);
    let mut step = 1.0;
    let mut trial = vec![ZERO; d];
    let mut trial_grad = vec![ZERO; d];
    let mut iterations = 0;

    while iterations < cfg.max_iterations && f > POLISH_TOL {
        let gnorm2: f64 = grad.iter().map(|z| z.norm_sqr()).sum();
        if gnorm2.sqrt() < GRADIENT_TOL {
            break;
        }
        let mut t = step;
        let accepted = loop {
            for ((x, a), g) in trial.iter_mut().zip(&alpha).zip(&grad) {
                *x = a - g * t;
            }
            normalize(&mut trial);
            let ft = eval.value(&trial);
            if ft <= f - ARMIJO * t * gnorm2 {
                break true;
            }
            t *= 0.5;
            if t < MIN_STEP {
                break false;
            }
        };
        if !accepted {
            break;
        }
        let ft = eval.value_and_gradient(&trial, &mut trial_grad);
        // Barzilai–Borwein length from the real inner products of the step
        // and the gradient change.
        let (mut ss, mut sy) = (0.0, 0.0);
        for k in 0..d {
            let s = trial[k] - alpha[k];
            let y = trial_grad[k] - grad[k];
            ss += s.norm_sqr();
            sy += (s.conj() * y).re;
        }
        step = if sy > 0.0 {
            (ss / sy).clamp(1e-10, 1e10)
        } else {
            (2.0 * t).min(1e10)
        };
        std::mem::swap(&mut alpha, &mut trial);
        std::mem::swap(&mut grad, &mut trial_grad);
        f = ft;
        iterations += 1;
    }

    // Report the residual of the normalized vector from scratch.
    normalize(&mut alpha);
    let residual = eval.value(&alpha);
    Witness {
        d,
        alpha: CVector::from_vec(alpha),
        residual,
        restart,
        iterations,
    }
}

/// Runs every restart (in parallel when workers are available).
pub fn search_all(set: &UnitarySet, cfg: &OptimizerConfig) -> Result<SearchRun> {
    cfg.validate()?;
    let d = set.d().get();
    let runs = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.restart_seed(r));
            let start = random_unit_vector(&mut rng, d);
            descend(set, start, cfg, r)
        })
        .collect();
    Ok(SearchRun { runs })
}

/// Best witness over `cfg.restarts` descents.
pub fn witness_search(set: &UnitarySet, cfg: &OptimizerConfig) -> Result<Witness> {
    Ok(search_all(set, cfg)?.best().clone())
}

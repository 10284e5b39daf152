//! Monte-Carlo run of the one-way protocol defined by a measurement.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::povm::Povm;
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::states::UnitarySet;

/// Orthonormal basis for the second party given outcome `φ`: Gram–Schmidt
/// over `{U_j φ̄}` (labelled `Some(j)`), completed with computational basis
/// vectors (labelled `None`, counted as a wrong guess).
fn bob_basis(set: &UnitarySet, phi: &CVector) -> Vec<(Option<usize>, CVector)> {
    let d = set.d().get();
    let bob = phi.conjugate();
    let mut basis: Vec<(Option<usize>, CVector)> = Vec::with_capacity(d);
    let add = |label: Option<usize>, v: CVector, basis: &mut Vec<(Option<usize>, CVector)>| {
        if basis.len() == d {
            return;
        }
        let mut v = v;
        for _ in 0..2 {
            for (_, q) in basis.iter() {
                let c = q.dotc(&v);
                v -= q * c;
            }
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push((label, v / Complex64::new(n, 0.0)));
        }
    };
    for (j, u) in set.members().iter().enumerate() {
        add(Some(j), u * &bob, &mut basis);
    }
    for k in 0..d {
        let mut e = CVector::zeros(d);
        e[k] = Complex64::new(1.0, 0.0);
        add(None, e, &mut basis);
    }
    basis
}

/// Sampling table for one `(outcome, state)` pair.
struct Row {
    cumulative: Vec<f64>,
    labels: Vec<Option<usize>>,
    fallback: Option<usize>,
}

impl Row {
    fn sample(&self, u: f64) -> Option<usize> {
        match self.cumulative.iter().position(|&c| u < c) {
            Some(k) => self.labels[k],
            None => self.fallback,
        }
    }
}

/// Draws a state index uniformly, the first party's outcome `k` with
/// probability `m_k/d`, then the second party's outcome by the Born rule in
/// the basis of [`bob_basis`]. Returns the fraction of trials where the
/// second party names the right state.
pub fn simulate_protocol(set: &UnitarySet, povm: &Povm, trials: usize, seed: u64) -> Result<f64> {
    let d = set.d().get();
    povm.validate_structure(d)?;
    if trials == 0 {
        return Err(Error::Input("trials must be positive".into()));
    }
    let n = set.len();
    let mut outcome_cdf = Vec::with_capacity(povm.len());
    let mut acc = 0.0;
    for e in &povm.elements {
        acc += e.weight / d as f64;
        outcome_cdf.push(acc);
    }

    let mut table: Vec<Vec<Row>> = Vec::with_capacity(povm.len());
    for e in &povm.elements {
        let basis = bob_basis(set, &e.vector);
        let bob = e.vector.conjugate();
        let rows = set
            .members()
            .iter()
            .map(|u| {
                let state = u * &bob;
                let probs: Vec<f64> = basis
                    .iter()
                    .map(|(_, q)| q.dotc(&state).norm_sqr())
                    .collect();
                let mut c = 0.0;
                let cumulative = probs
                    .iter()
                    .map(|p| {
                        c += p;
                        c
                    })
                    .collect();
                let best = (0..probs.len()).max_by(|&a, &b| probs[a].total_cmp(&probs[b]));
                Row {
                    cumulative,
                    labels: basis.iter().map(|(l, _)| *l).collect(),
                    fallback: best.and_then(|k| basis[k].0),
                }
            })
            .collect();
        table.push(rows);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..trials {
        let i = rng.random_range(0..n);
        let u: f64 = rng.random::<f64>() * acc;
        let k = outcome_cdf
            .iter()
            .position(|&c| u < c)
            .unwrap_or(outcome_cdf.len() - 1);
        if table[k][i].sample(rng.random::<f64>()) == Some(i) {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpauli::{Dimension, PauliIndex};
    use crate::linalg::ZERO;
    use crate::search::povm::orbit_povm;
    use crate::states::bell_set;

    fn pair() -> UnitarySet {
        bell_set(
            Dimension::new(2).unwrap(),
            &[PauliIndex::IDENTITY, PauliIndex { m: 0, n: 1 }],
        )
        .unwrap()
    }

    #[test]
    fn computational_basis_is_perfect() {
        let e0 = CVector::from_vec(vec![Complex64::new(1.0, 0.0), ZERO]);
        let p = orbit_povm(&e0);
        assert_eq!(simulate_protocol(&pair(), &p, 10_000, 0).unwrap(), 1.0);
    }

    #[test]
    fn wrong_basis_is_a_coin_flip() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = CVector::from_element(2, Complex64::new(h, 0.0));
        let p = orbit_povm(&plus);
        let rate = simulate_protocol(&pair(), &p, 10_000, 0).unwrap();
        assert!((rate - 0.5).abs() < 0.02, "rate = {rate}");
    }

    #[test]
    fn rejects_incomplete_measurement() {
        let e0 = CVector::from_vec(vec![Complex64::new(1.0, 0.0), ZERO]);
        let p = Povm {
            elements: vec![crate::search::povm::PovmElement {
                weight: 1.0,
                vector: e0,
            }],
        };
        assert!(matches!(
            simulate_protocol(&pair(), &p, 10, 0),
            Err(Error::InvalidPovm(_))
        ));
    }
}

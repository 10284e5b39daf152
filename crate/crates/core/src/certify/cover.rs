//! Fourier-cover exclusion for generalized-Bell sets.
//!
//! A witness `α` for a generalized-Bell set must satisfy
//! `⟨α|U_{mn}|α⟩ = Σ_j ω^{mj} α_j ᾱ_{j⊕n} = 0` for every label difference
//! `(m, n)` of the set. For a fixed shift `n` these are DFT coefficients of
//! the shift-`n` autocorrelation `c_n(j) = α_j ᾱ_{j⊕n}`:
//!
//! 1. if shift 0 has every nonzero frequency, `c_0` has a flat spectrum away
//!    from DC, so `|α_j|² = 1/d` for all `j`;
//! 2. if some shift `n ≠ 0` has every frequency, `c_n ≡ 0`, which is
//!    impossible once all moduli are `1/d`.
//!
//! Both covers present means no witness exists.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpauli::{Dimension, PauliIndex};

/// Vanishing conditions on the autocorrelation spectrum of a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationConstraintSystem {
    d: Dimension,
    indices: Vec<PauliIndex>,
    /// `shift → frequencies` that must vanish.
    by_shift: BTreeMap<usize, BTreeSet<usize>>,
}

impl CorrelationConstraintSystem {
    pub fn d(&self) -> Dimension {
        self.d
    }

    /// Labels the system was derived from.
    pub fn indices(&self) -> &[PauliIndex] {
        &self.indices
    }

    /// All `(shift, frequency)` pairs.
    pub fn constraints(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_shift
            .iter()
            .flat_map(|(&n, fs)| fs.iter().map(move |&m| (n, m)))
    }

    pub fn frequencies_at(&self, shift: usize) -> BTreeSet<usize> {
        self.by_shift.get(&shift).cloned().unwrap_or_default()
    }

    pub fn shifts(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_shift.keys().copied()
    }

    /// Invariance under `(m, n) → (−m, −n)`.
    pub fn is_conjugate_closed(&self) -> bool {
        let d = self.d;
        self.constraints().all(|(n, m)| {
            let (cn, cm) = (d.reduce(-(n as i64)), d.reduce(-(m as i64)));
            self.by_shift.get(&cn).is_some_and(|fs| fs.contains(&cm))
        })
    }
}

/// Collects every pairwise label difference `(m_i − m_j, n_i − n_j)`, `i ≠ j`.
/// The scalar phases of the adjoint products do not affect vanishing and are
/// dropped.
pub fn constraints_from_set(
    indices: &[PauliIndex],
    d: Dimension,
) -> Result<CorrelationConstraintSystem> {
    let mut seen = HashSet::new();
    for &p in indices {
        if !p.is_valid(d) {
            return Err(Error::Input(format!(
                "Pauli index {p} out of range for d = {d}"
            )));
        }
        if !seen.insert(p) {
            return Err(Error::Duplicate(p.to_string()));
        }
    }
    let mut by_shift: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, a) in indices.iter().enumerate() {
        for (j, b) in indices.iter().enumerate() {
            if i == j {
                continue;
            }
            let diff = PauliIndex::new(d, a.m as i64 - b.m as i64, a.n as i64 - b.n as i64);
            by_shift.entry(diff.n).or_default().insert(diff.m);
        }
    }
    Ok(CorrelationConstraintSystem {
        d,
        indices: indices.to_vec(),
        by_shift,
    })
}

/// The two covers that rule out a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub d: usize,
    /// Labels of the examined set.
    pub indices: Vec<PauliIndex>,
    /// Vanishing frequencies at shift 0; contains `1..d`.
    pub shift0_frequencies: Vec<usize>,
    pub witness_shift: usize,
    /// Vanishing frequencies at `witness_shift`; equals `0..d`.
    pub shift_n_frequencies: Vec<usize>,
    /// `|α_j|²` forced by the shift-0 cover, as `[numerator, denominator]`.
    pub uniform_modulus: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    Certificate(CoverCertificate),
    Inconclusive,
}

impl CoverOutcome {
    pub fn certificate(self) -> Option<CoverCertificate> {
        match self {
            CoverOutcome::Certificate(c) => Some(c),
            CoverOutcome::Inconclusive => None,
        }
    }
}

/// Sound, not complete: [`CoverOutcome::Inconclusive`] says nothing about
/// distinguishability.
pub fn fourier_cover_prover(c: &CorrelationConstraintSystem) -> CoverOutcome {
    let dd = c.d.get();
    let shift0 = c.frequencies_at(0);
    if !(1..dd).all(|m| shift0.contains(&m)) {
        return CoverOutcome::Inconclusive;
    }
    let full = c.by_shift.iter().find(|(&n, fs)| n != 0 && fs.len() == dd);
    match full {
        Some((&n, fs)) => CoverOutcome::Certificate(CoverCertificate {
            d: dd,
            indices: c.indices.clone(),
            shift0_frequencies: shift0.into_iter().collect(),
            witness_shift: n,
            shift_n_frequencies: fs.iter().copied().collect(),
            uniform_modulus: [1, dd],
        }),
        None => CoverOutcome::Inconclusive,
    }
}

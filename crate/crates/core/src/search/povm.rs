//! Completing witnesses into a rank-one measurement `Σ_k m_k |φ_k⟩⟨φ_k| = I`.
//!
//! Conjugation convention: the witness `α` lives on the second party's
//! side. Projecting the first party onto `⟨φ|` leaves `U_i|φ̄⟩` with the
//! second, so the measurement vector for a witness `α` is `φ = ᾱ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::witness::Witness;
use crate::error::{Error, Result};
use crate::gpauli::{self, PhasedPauli};
use crate::linalg::{
    complex_vec, max_abs_diff, CMatrix, CVector, HermitianCoords, RMatrix, RVector,
};
use crate::states::UnitarySet;

/// `‖Σ m_k φ_k φ_k† − I‖_max` bound for a complete measurement.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Bound on `|⟨φ̄_k|U_i†U_j|φ̄_k⟩|`, `i ≠ j`, for every element.
pub const ORTHOGONALITY_TOL: f64 = 1e-6;
const SAME_RAY: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PovmElement {
    pub weight: f64,
    /// Unit vector on the measuring party's side.
    #[serde(with = "complex_vec")]
    pub vector: CVector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Povm {
    pub elements: Vec<PovmElement>,
}

impl Povm {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements.first().map_or(0, |e| e.vector.len())
    }

    pub fn sum(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for e in &self.elements {
            m += (&e.vector * e.vector.adjoint()) * Complex64::new(e.weight, 0.0);
        }
        m
    }

    pub fn identity_residual(&self) -> f64 {
        let d = self.dim();
        max_abs_diff(&self.sum(), &CMatrix::identity(d, d))
    }

    /// Largest `|⟨φ̄_k|U_i† U_j|φ̄_k⟩|` over elements and pairs `i ≠ j`.
    pub fn orthogonality_residual(&self, set: &UnitarySet) -> f64 {
        let mut worst = 0.0f64;
        for e in &self.elements {
            let bob = e.vector.conjugate();
            let images: Vec<CVector> = set.members().iter().map(|u| u * &bob).collect();
            for i in 0..images.len() {
                for j in i + 1..images.len() {
                    worst = worst.max(images[i].dotc(&images[j]).norm());
                }
            }
        }
        worst
    }

    /// Structural checks: positive weights, unit vectors of length `d`, and
    /// a resolution of the identity.
    pub fn validate_structure(&self, d: usize) -> Result<()> {
        if self.elements.is_empty() {
            return Err(Error::InvalidPovm("no elements".into()));
        }
        for (k, e) in self.elements.iter().enumerate() {
            if !(e.weight > 0.0) {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has weight {}",
                    e.weight
                )));
            }
            if e.vector.len() != d {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has length {}",
                    e.vector.len()
                )));
            }
            if !((e.vector.norm() - 1.0).abs() < 1e-10) {
                return Err(Error::InvalidPovm(format!(
                    "element {k} is not a unit vector"
                )));
            }
        }
        let r = self.identity_residual();
        if !(r < IDENTITY_TOL) {
            return Err(Error::InvalidPovm(format!(
                "elements sum to I only within {r:.3e}"
            )));
        }
        Ok(())
    }

    /// Structure plus the per-element orthogonality requirement.
    pub fn is_perfect_for(&self, set: &UnitarySet) -> bool {
        self.validate_structure(set.d().get()).is_ok()
            && self.orthogonality_residual(set) < ORTHOGONALITY_TOL
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Completion {
    Complete(Povm),
    Incomplete {
        identity_residual: f64,
        candidates: usize,
    },
}

/// Adds `(w, v)` to `out`, merging with an existing element on the same ray.
fn push_merged(out: &mut Vec<PovmElement>, weight: f64, vector: CVector) {
    for e in out.iter_mut() {
        if e.vector.dotc(&vector).norm() > 1.0 - SAME_RAY {
            e.weight += weight;
            return;
        }
    }
    out.push(PovmElement { weight, vector });
}

/// Orbit `{U_ab α}` over all `d²` generalized Paulis with weight `1/d` each.
/// For a generalized-Bell set every orbit point is again a witness, since
/// conjugation only multiplies `U_i† U_j` by a phase.
pub fn orbit_povm(alpha: &CVector) -> Povm {
    let d = gpauli::Dimension::new(alpha.len()).expect("d >= 2");
    let w = 1.0 / d.get() as f64;
    let mut elements = Vec::new();
    for p in gpauli::all_indices(d) {
        let bob = gpauli::apply_vector(d, PhasedPauli::unphased(p), alpha);
        push_merged(&mut elements, w, bob.conjugate());
    }
    Povm { elements }
}

/// Completes witnesses into a measurement.
///
/// Generalized-Bell sets use the orbit of the lowest-residual witness. Other sets
/// solve a nonnegative least-squares problem for weights on the distinct
/// witnesses in `pool`. Only witnesses below `success_tol` are used.
pub fn povm_completion(set: &UnitarySet, pool: &[Witness], success_tol: f64) -> Result<Completion> {
    let mut usable: Vec<&Witness> = pool.iter().filter(|w| w.residual < success_tol).collect();
    usable.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    if usable.is_empty() {
        return Err(Error::Input(format!(
            "no witness with residual below {success_tol:e}"
        )));
    }
    let d = set.d().get();
    if usable.iter().any(|w| w.alpha.len() != d) {
        return Err(Error::Input(
            "witness dimension does not match the set".into(),
        ));
    }
    if set.tag().is_some() {
        let povm = orbit_povm(&usable[0].alpha);
        return Ok(if povm.is_perfect_for(set) {
            Completion::Complete(povm)
        } else {
            Completion::Incomplete {
                identity_residual: povm.identity_residual(),
                candidates: povm.len(),
            }
        });
    }

    let mut candidates: Vec<PovmElement> = Vec::new();
    for w in &usable {
        push_merged(&mut candidates, 0.0, w.alpha.conjugate());
    }
    let hc = HermitianCoords::new(d);
    let cols: Vec<RVector> = candidates
        .iter()
        .map(|e| hc.coords(&(&e.vector * e.vector.adjoint())))
        .collect();
    let a = RMatrix::from_columns(&cols);
    let b = hc.coords(&CMatrix::identity(d, d));
    let x = nnls(&a, &b);
    let elements: Vec<PovmElement> = candidates
        .into_iter()
        .zip(x.iter())
        .filter(|(_, &w)| w > 0.0)
        .map(|(e, &w)| PovmElement {
            weight: w,
            vector: e.vector,
        })
        .collect();
    let n = cols.len();
    if elements.is_empty() {
        return Ok(Completion::Incomplete {
            identity_residual: 1.0,
            candidates: n,
        });
    }
    let povm = Povm { elements };
    Ok(if povm.is_perfect_for(set) {
        Completion::Complete(povm)
    } else {
        Completion::Incomplete {
            identity_residual: povm.identity_residual(),
            candidates: n,
        }
    })
}

/// Lawson–Hanson active-set nonnegative least squares: minimizes
/// `‖Ax − b‖` subject to `x ≥ 0`.
pub fn nnls(a: &RMatrix, b: &RVector) -> RVector {
    let n = a.ncols();
    let mut x = RVector::zeros(n);
    let mut passive = vec![false; n];
    let scale = a.amax().max(b.amax()).max(1.0);
    let tol = 1e-12 * scale * (a.nrows().max(n) as f64);

    let solve_passive = |passive: &[bool]| -> RVector {
        let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let sub = RMatrix::from_columns(
            &idx.iter()
                .map(|&j| a.column(j).into_owned())
                .collect::<Vec<_>>(),
        );
        let sol = sub
            .svd(true, true)
            .solve(b, 1e-14)
            .expect("U and V were computed");
        let mut z = RVector::zeros(n);
        for (k, &j) in idx.iter().enumerate() {
            z[j] = sol[k];
        }
        z
    };

    for _ in 0..3 * n.max(1) {
        let w = a.transpose() * (b - a * &x);
        let next = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = next else { break };
        passive[j] = true;
        loop {
            let z = solve_passive(&passive);
            if (0..n).filter(|&k| passive[k]).all(|k| z[k] > 0.0) {
                x = z;
                break;
            }
            let mut step = 1.0f64;
            for k in (0..n).filter(|&k| passive[k] && z[k] <= 0.0) {
                step = step.min(x[k] / (x[k] - z[k]));
            }
            x += (z - &x) * step;
            for k in 0..n {
                if passive[k] && x[k] <= tol {
                    passive[k] = false;
                    x[k] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    x
}

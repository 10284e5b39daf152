//! Orthogonality penalty `f(α) = Σ_{i<j} |⟨α|U_i† U_j|α⟩|²` on the unit sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gpauli::{Dimension, PhasedPauli};
use crate::linalg::{CMatrix, CVector, ZERO};
use crate::states::UnitarySet;

/// Unit-norm tolerance for penalty inputs.
pub const UNIT_TOL: f64 = 1e-10;

enum Action<'a> {
    Pauli {
        d: Dimension,
        ops: &'a [PhasedPauli],
        adjoints: Vec<PhasedPauli>,
    },
    Dense(&'a [CMatrix]),
}

/// Reusable evaluator; generalized-Pauli sets are applied in O(d) per member.
pub struct PenaltyEval<'a> {
    action: Action<'a>,
    n: usize,
    d: usize,
    images: Vec<Vec<Complex64>>,
    combo: Vec<Complex64>,
    back: Vec<Complex64>,
}

impl<'a> PenaltyEval<'a> {
    pub fn new(set: &'a UnitarySet) -> Self {
        let d = set.d();
        let action = match set.tag() {
            Some(ops) => Action::Pauli {
                d,
                ops,
                adjoints: ops.iter().map(|p| p.adjoint(d)).collect(),
            },
            None => Action::Dense(set.members()),
        };
        let (n, dd) = (set.len(), d.get());
        PenaltyEval {
            action,
            n,
            d: dd,
            images: vec![vec![ZERO; dd]; n],
            combo: vec![ZERO; dd],
            back: vec![ZERO; dd],
        }
    }

    fn forward(&mut self, alpha: &[Complex64]) {
        for (i, out) in self.images.iter_mut().enumerate() {
            match &self.action {
                Action::Pauli { d, ops, .. } => ops[i].apply_to(*d, alpha, out),
                Action::Dense(us) => {
                    let u = &us[i];
                    for (r, o) in out.iter_mut().enumerate() {
                        *o = (0..self.d).map(|c| u[(r, c)] * alpha[c]).sum();
                    }
                }
            }
        }
    }

    fn adjoint_apply(&mut self, i: usize) {
        match &self.action {
            Action::Pauli { d, adjoints, .. } => {
                adjoints[i].apply_to(*d, &self.combo, &mut self.back)
            }
            Action::Dense(us) => {
                let u = &us[i];
                for (c, o) in self.back.iter_mut().enumerate() {
                    *o = (0..self.d).map(|r| u[(r, c)].conj() * self.combo[r]).sum();
                }
            }
        }
    }

    fn gram(&self, i: usize, j: usize) -> Complex64 {
        self.images[i]
            .iter()
            .zip(&self.images[j])
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `f(α)` only.
    pub fn value(&mut self, alpha: &[Complex64]) -> f64 {
        self.forward(alpha);
        let mut f = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                f += self.gram(i, j).norm_sqr();
            }
        }
        f
    }

    /// `f(α)` and the Riemannian gradient, as a complex vector whose real
    /// and imaginary parts are the gradient components along `Re α`, `Im α`.
    pub fn value_and_gradient(&mut self, alpha: &[Complex64], grad: &mut [Complex64]) -> f64 {
        self.forward(alpha);
        let n = self.n;
        let mut g = vec![ZERO; n * n];
        let mut f = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let v = self.gram(i, j);
                g[i * n + j] = v;
                g[j * n + i] = v.conj();
                f += v.norm_sqr();
            }
        }
        grad.iter_mut().for_each(|x| *x = ZERO);
        // ∂f/∂ᾱ = Σ_i U_i† Σ_{j≠i} ⟨β_j, β_i⟩ β_j with β = Uα; the real
        // gradient is twice that.
        for i in 0..n {
            self.combo.iter_mut().for_each(|x| *x = ZERO);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let c = g[j * n + i];
                for (acc, b) in self.combo.iter_mut().zip(&self.images[j]) {
                    *acc += c * b;
                }
            }
            self.adjoint_apply(i);
            for (acc, b) in grad.iter_mut().zip(&self.back) {
                *acc += b * 2.0;
            }
        }
        let radial: f64 = alpha
            .iter()
            .zip(grad.iter())
            .map(|(a, g)| (a.conj() * g).re)
            .sum();
        for (gk, a) in grad.iter_mut().zip(alpha) {
            *gk -= a * radial;
        }
        f
    }
}

/// `f(α)` and its Riemannian gradient for a unit vector `α`.
pub fn penalty(alpha: &CVector, s: &UnitarySet) -> Result<(f64, CVector)> {
    if alpha.len() != s.d().get() {
        return Err(Error::Input(format!(
            "vector has length {}, expected {}",
            alpha.len(),
            s.d()
        )));
    }
    let norm = alpha.norm();
    if !((norm - 1.0).abs() < UNIT_TOL) {
        return Err(Error::NotNormalized(norm));
    }
    let mut eval = PenaltyEval::new(s);
    let mut grad = CVector::zeros(alpha.len());
    let f = eval.value_and_gradient(alpha.as_slice(), grad.as_mut_slice());
    Ok((f, grad))
}

/// Penalty recomputed from dense products `U_i† U_j`, sharing nothing with
/// [`PenaltyEval`].
pub fn penalty_dense(alpha: &CVector, s: &UnitarySet) -> f64 {
    let mut f = 0.0;
    for (i, ui) in s.members().iter().enumerate() {
        for uj in &s.members()[i + 1..] {
            let w = ui.adjoint() * uj;
            f += (alpha.adjoint() * (&w * alpha))[(0, 0)].norm_sqr();
        }
    }
    f
}

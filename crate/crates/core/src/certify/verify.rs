//! Independent re-check of certificates against a set.
//!
//! Nothing here calls into the provers: label differences are recomputed
//! from exact adjoint products, and span membership is recomputed with
//! modified Gram–Schmidt instead of the provers' SVD.

use std::collections::BTreeSet;

use super::{block, Certificate, Proof};
use crate::gpauli::adjoint_product;
use crate::linalg::{HermitianCoords, RVector};
use crate::states::UnitarySet;

/// Block certificates claiming a looser tolerance than this are rejected.
pub const MAX_ACCEPTED_BLOCK_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(String),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

macro_rules! reject {
    ($($arg:tt)*) => {
        return Verification::Invalid(format!($($arg)*))
    };
}

pub fn verify_certificate(cert: &Certificate, original: &UnitarySet) -> Verification {
    let examined = cert.direction.apply(original);
    let d = examined.d().get();
    let claimed_d = match &cert.proof {
        Proof::FourierCover(c) => c.d,
        Proof::ForcedBlock(b) => b.d,
    };
    if claimed_d != d {
        reject!("certificate is for d = {claimed_d}, set has d = {d}");
    }
    if cert.set_hash != original.content_hash() {
        reject!("set hash mismatch");
    }
    match &cert.proof {
        Proof::FourierCover(c) => verify_cover(c, &examined),
        Proof::ForcedBlock(b) => verify_block(b, &examined),
    }
}

fn verify_cover(c: &super::CoverCertificate, set: &UnitarySet) -> Verification {
    let d = set.d();
    let dd = d.get();
    let Some(tag) = set.tag() else {
        reject!("cover certificate needs a generalized-Bell set");
    };
    let labels: Vec<_> = tag.iter().map(|p| p.index).collect();
    if labels != c.indices {
        reject!("certificate labels do not match the set");
    }
    if c.uniform_modulus != [1, dd] {
        reject!("uniform modulus must be 1/{dd}");
    }
    if c.witness_shift == 0 || c.witness_shift >= dd {
        reject!("witness shift {} is not a nonzero residue", c.witness_shift);
    }

    let mut shift0 = BTreeSet::new();
    let mut shift_n = BTreeSet::new();
    for (i, &a) in labels.iter().enumerate() {
        for (j, &b) in labels.iter().enumerate() {
            if i == j {
                continue;
            }
            // ⟨α|U_b† U_a|α⟩ = ω^k ⟨α|U_{a−b}|α⟩.
            let p = adjoint_product(d, b, a).index;
            if p.n == 0 {
                shift0.insert(p.m);
            } else if p.n == c.witness_shift {
                shift_n.insert(p.m);
            }
        }
    }
    if !(1..dd).all(|m| shift0.contains(&m)) {
        reject!("shift-0 differences do not cover every nonzero frequency");
    }
    if shift_n.len() != dd {
        reject!(
            "shift-{} differences do not cover every frequency",
            c.witness_shift
        );
    }
    let claimed0: BTreeSet<usize> = c.shift0_frequencies.iter().copied().collect();
    let claimed_n: BTreeSet<usize> = c.shift_n_frequencies.iter().copied().collect();
    if claimed0 != shift0 || claimed_n != shift_n {
        reject!("claimed frequency sets differ from the recomputed ones");
    }
    Verification::Valid
}

/// Orthonormal basis of the span of `rows` by twice-iterated modified
/// Gram–Schmidt, dropping rows whose remainder is below `rtol` times the
/// largest row norm.
fn gram_schmidt(rows: &[RVector], rtol: f64) -> Vec<RVector> {
    let scale = rows.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let mut basis: Vec<RVector> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dot(&v);
                v.axpy(-c, q, 1.0);
            }
        }
        let n = v.norm();
        if scale > 0.0 && n > rtol * scale {
            basis.push(v / n);
        }
    }
    basis
}

fn residual(basis: &[RVector], f: &RVector) -> f64 {
    let mut v = f.clone();
    for _ in 0..2 {
        for q in basis {
            let c = q.dot(&v);
            v.axpy(-c, q, 1.0);
        }
    }
    v.norm()
}

fn verify_block(b: &block::BlockCertificate, set: &UnitarySet) -> Verification {
    let d = set.d().get();
    if !(b.tolerance > 0.0 && b.tolerance <= MAX_ACCEPTED_BLOCK_TOL) {
        reject!(
            "tolerance {} outside (0, {MAX_ACCEPTED_BLOCK_TOL}]",
            b.tolerance
        );
    }
    let k = b.block_rows.len();
    if k < 2 || b.block_rows.iter().any(|&r| r >= d) {
        reject!("invalid block rows {:?}", b.block_rows);
    }
    let distinct: BTreeSet<_> = b.block_rows.iter().collect();
    if distinct.len() != k {
        reject!("repeated block rows");
    }
    if b.forced_functionals.len() != k * k - 1 {
        reject!(
            "expected {} functional residuals, found {}",
            k * k - 1,
            b.forced_functionals.len()
        );
    }

    let hc = HermitianCoords::new(d);
    let n = set.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                // All ordered pairs, unlike the prover.
                let w = set.members()[j].adjoint() * &set.members()[i];
                let (re, im) = hc.functional(&w);
                rows.push(re);
                rows.push(im);
            }
        }
    }
    let basis = gram_schmidt(&rows, crate::linalg::RANK_RTOL);
    let functionals = block::block_functionals(&hc, d, &b.block_rows);
    for (idx, (f, &claimed)) in functionals.iter().zip(&b.forced_functionals).enumerate() {
        let r = residual(&basis, f);
        if !(r < b.tolerance) {
            reject!(
                "functional {idx} has residual {r:.3e} >= {:.1e}",
                b.tolerance
            );
        }
        if !(claimed >= 0.0 && claimed < b.tolerance) || (claimed - r).abs() > b.tolerance {
            reject!("claimed residual {claimed:.3e} for functional {idx} disagrees with recomputed {r:.3e}");
        }
    }
    Verification::Valid
}

//! Forced-scalar-block exclusion.
//!
//! Let `Q` project onto a set of basis rows of size `k ≥ 2`. If every
//! traceless functional of the `Q`-block (`Re M_pq`, `Im M_pq`,
//! `M_pp − M_qq`) is a real combination of the constraint functionals,
//! then every feasible Hermitian `M` has `QMQ = t·Q`. A rank-one feasible
//! `|φ⟩⟨φ|` has a block of rank at most one, so `t = 0`; rank-one elements
//! then sum to something with a zero block, never to `I`. Measurement
//! elements can be refined to rank one, so no perfect one-way protocol
//! exists.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::feasible::FeasibleSubspace;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianCoords, RVector};

/// Default residual bound for functional membership.
pub const BLOCK_TOL: f64 = 1e-8;

/// Premise recorded in every block certificate.
pub const RANK_ONE_PREMISE: &str =
    "measurement elements of a perfect one-way protocol may be refined to rank one";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockCertificate {
    pub d: usize,
    pub block_rows: Vec<usize>,
    /// Distance of each traceless block functional to the constraint span,
    /// in [`block_functionals`] order.
    pub forced_functionals: Vec<f64>,
    pub tolerance: f64,
    pub constraint_rank: usize,
    pub premise: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BlockOutcome {
    Certificate(BlockCertificate),
    /// Largest functional residual of the block that came closest.
    NotForced {
        worst_residual: f64,
    },
}

impl BlockOutcome {
    pub fn certificate(self) -> Option<BlockCertificate> {
        match self {
            BlockOutcome::Certificate(c) => Some(c),
            BlockOutcome::NotForced { .. } => None,
        }
    }
}

/// Unit-norm coordinate rows of the `k² − 1` traceless functionals on the
/// block: for each `p < q`, `M ↦ Tr((E_pq + E_qp) M)` and
/// `M ↦ Tr(i(E_qp − E_pq) M)`; then `M ↦ M_{b0 b0} − M_{bl bl}`.
pub fn block_functionals(coords: &HermitianCoords, d: usize, block_rows: &[usize]) -> Vec<RVector> {
    let one = num_complex::Complex64::new(1.0, 0.0);
    let i = num_complex::Complex64::i();
    let mut out = Vec::new();
    let mut push = |f: CMatrix| {
        let (re, _) = coords.functional(&f);
        let n = re.norm();
        out.push(re / n);
    };
    for (a, &p) in block_rows.iter().enumerate() {
        for &q in &block_rows[a + 1..] {
            let mut sym = CMatrix::zeros(d, d);
            sym[(p, q)] = one;
            sym[(q, p)] = one;
            push(sym);
            let mut anti = CMatrix::zeros(d, d);
            anti[(q, p)] = i;
            anti[(p, q)] = -i;
            push(anti);
        }
    }
    let b0 = block_rows[0];
    for &b in &block_rows[1..] {
        let mut diag = CMatrix::zeros(d, d);
        diag[(b0, b0)] = one;
        diag[(b, b)] = -one;
        push(diag);
    }
    out
}

fn validate_rows(d: usize, block_rows: &[usize]) -> Result<()> {
    if block_rows.len() < 2 {
        return Err(Error::Input("a block needs at least two rows".into()));
    }
    if let Some(&r) = block_rows.iter().find(|&&r| r >= d) {
        return Err(Error::Input(format!(
            "block row {r} out of range for d = {d}"
        )));
    }
    let mut sorted = block_rows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != block_rows.len() {
        return Err(Error::Input("block rows must be distinct".into()));
    }
    Ok(())
}

pub fn block_identity_prover(
    s: &FeasibleSubspace<'_>,
    block_rows: &[usize],
    tolerance: f64,
) -> Result<BlockOutcome> {
    let d = s.d();
    validate_rows(d, block_rows)?;
    let residuals: Vec<f64> = block_functionals(s.coords(), d, block_rows)
        .iter()
        .map(|f| s.functional_residual(f))
        .collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if worst < tolerance {
        Ok(BlockOutcome::Certificate(BlockCertificate {
            d,
            block_rows: block_rows.to_vec(),
            forced_functionals: residuals,
            tolerance,
            constraint_rank: s.constraint_rank(),
            premise: RANK_ONE_PREMISE.to_string(),
        }))
    } else {
        Ok(BlockOutcome::NotForced {
            worst_residual: worst,
        })
    }
}

/// `k`-element subsets of `0..d` in lexicographic order.
fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > d {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == d - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Tries every block of size `2..=max_block` in lexicographic order and
/// returns the first certificate. Candidates are evaluated in parallel; the
/// result does not depend on scheduling.
pub fn scan_blocks(s: &FeasibleSubspace<'_>, max_block: usize, tolerance: f64) -> BlockOutcome {
    let d = s.d();
    let mut closest = f64::INFINITY;
    for k in 2..=max_block.min(d) {
        let outcomes: Vec<BlockOutcome> = combinations(d, k)
            .par_iter()
            .map(|rows| block_identity_prover(s, rows, tolerance).expect("rows are in range"))
            .collect();
        for outcome in outcomes {
            match outcome {
                BlockOutcome::Certificate(c) => return BlockOutcome::Certificate(c),
                BlockOutcome::NotForced { worst_residual } => closest = closest.min(worst_residual),
            }
        }
    }
    BlockOutcome::NotForced {
        worst_residual: closest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::feasible::hermitian_feasible_subspace;
    use crate::gpauli::{Dimension, PauliIndex};
    use crate::linalg::CVector;
    use crate::states::{bell_set, theorem2_set, Theorem2Spec};
    use num_complex::Complex64;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn idx(pairs: &[(usize, usize)]) -> Vec<PauliIndex> {
        pairs.iter().map(|&(m, n)| PauliIndex { m, n }).collect()
    }

    #[test]
    fn lexicographic_combinations() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(5, 3).len(), 10);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn block_construction_top_block_is_forced() {
        for dd in [7, 9] {
            let s = theorem2_set(&Theorem2Spec::with_defaults(dim(dd)).unwrap()).unwrap();
            let fs = hermitian_feasible_subspace(&s).unwrap();
            let cert = block_identity_prover(&fs, &[0, 1], BLOCK_TOL)
                .unwrap()
                .certificate()
                .unwrap();
            assert_eq!(cert.forced_functionals.len(), 3);
            assert!(cert.forced_functionals.iter().all(|&r| r < 1e-8));
            let scanned = scan_blocks(&fs, 2, BLOCK_TOL).certificate().unwrap();
            assert_eq!(scanned.block_rows, vec![0, 1]);
        }
    }

    #[test]
    fn distinguishable_pair_is_not_forced() {
        let s = bell_set(dim(2), &idx(&[(0, 0), (1, 0)])).unwrap();
        let fs = hermitian_feasible_subspace(&s).unwrap();
        assert!(matches!(
            block_identity_prover(&fs, &[0, 1], BLOCK_TOL).unwrap(),
            BlockOutcome::NotForced { .. }
        ));
        // |+⟩⟨+| is feasible and its block is not scalar.
        let plus = CVector::from_element(2, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        assert!(fs.membership_residual(&(&plus * plus.adjoint())) < 1e-12);

        let s = bell_set(dim(2), &idx(&[(0, 0), (0, 1)])).unwrap();
        let fs = hermitian_feasible_subspace(&s).unwrap();
        assert!(scan_blocks(&fs, 2, BLOCK_TOL).certificate().is_none());

        let s = bell_set(dim(4), &idx(&[(0, 0), (1, 0), (2, 0), (3, 0)])).unwrap();
        let fs = hermitian_feasible_subspace(&s).unwrap();
        assert!(scan_blocks(&fs, 3, BLOCK_TOL).certificate().is_none());
    }

    #[test]
    fn block_row_validation() {
        let s = bell_set(dim(3), &idx(&[(0, 0), (1, 0)])).unwrap();
        let fs = hermitian_feasible_subspace(&s).unwrap();
        assert!(block_identity_prover(&fs, &[0], BLOCK_TOL).is_err());
        assert!(block_identity_prover(&fs, &[0, 3], BLOCK_TOL).is_err());
        assert!(block_identity_prover(&fs, &[1, 1], BLOCK_TOL).is_err());
    }
}

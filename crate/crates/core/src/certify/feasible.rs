//! The real-linear space of Hermitian `M` with `Tr(U_i M U_j†) = 0`, `i ≠ j`.
//!
//! For every rank-one element `|φ⟩⟨φ|` of a discriminating first-party
//! measurement, the transpose `|φ̄⟩⟨φ̄|` (the witness projector) lies in this
//! space. Scalar blocks and `Σ M_k = I` survive transposition, so structure
//! forced on the whole space constrains every candidate measurement.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianCoords, RMatrix, RVector, RowSpace};
use crate::states::UnitarySet;

/// Real constraint rows for `set`, two per unordered pair `i < j` (real and
/// imaginary part of `M ↦ Tr(U_j† U_i M)`). The `(j, i)` functionals are the
/// conjugates and are left out.
pub fn constraint_rows(set: &UnitarySet) -> RMatrix {
    let d = set.d().get();
    let hc = HermitianCoords::new(d);
    let n = set.len();
    let mut rows = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in i + 1..n {
            let w = set.members()[j].adjoint() * &set.members()[i];
            let (re, im) = hc.functional(&w);
            rows.push(re.transpose());
            rows.push(im.transpose());
        }
    }
    if rows.is_empty() {
        RMatrix::zeros(0, d * d)
    } else {
        RMatrix::from_rows(&rows)
    }
}

/// Kernel of the constraint rows, realized as Hermitian matrices.
pub struct FeasibleSubspace<'a> {
    set: &'a UnitarySet,
    coords: HermitianCoords,
    rows: RMatrix,
    split: RowSpace,
}

impl<'a> FeasibleSubspace<'a> {
    pub fn set(&self) -> &'a UnitarySet {
        self.set
    }

    pub fn d(&self) -> usize {
        self.set.d().get()
    }

    pub fn constraint_rank(&self) -> usize {
        self.split.rank()
    }

    pub fn dim(&self) -> usize {
        self.split.kernel.ncols()
    }

    pub fn constraint_rows(&self) -> &RMatrix {
        &self.rows
    }

    pub fn coords(&self) -> &HermitianCoords {
        &self.coords
    }

    /// Orthonormal (Hilbert–Schmidt) basis of the subspace.
    pub fn basis(&self) -> Vec<CMatrix> {
        self.split
            .kernel
            .column_iter()
            .map(|c| self.coords.to_matrix(&c.into_owned()))
            .collect()
    }

    /// Distance from the functional `f` (in Hermitian coordinates) to the
    /// span of the constraint functionals. Zero means `f` vanishes on the
    /// whole subspace.
    pub fn functional_residual(&self, f: &RVector) -> f64 {
        self.split.residual(f)
    }

    /// Largest constraint violation `|Tr(U_j† U_i M)|` of a Hermitian `M`.
    pub fn membership_residual(&self, m: &CMatrix) -> f64 {
        let x = self.coords.coords(m);
        (&self.rows * x).amax()
    }
}

pub fn hermitian_feasible_subspace(set: &UnitarySet) -> Result<FeasibleSubspace<'_>> {
    if set.len() < 2 {
        return Err(Error::Input(
            "feasible subspace needs at least two members".into(),
        ));
    }
    let rows = constraint_rows(set);
    let split = RowSpace::of(&rows);
    Ok(FeasibleSubspace {
        set,
        coords: HermitianCoords::new(set.d().get()),
        rows,
        split,
    })
}

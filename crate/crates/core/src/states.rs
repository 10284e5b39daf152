//! Sets of maximally entangled states, each given by its defining unitary:
//! member `U` stands for the state `(I ⊗ U)|ψ₀⟩`, `|ψ₀⟩ = d^{-1/2} Σ_j |jj⟩`.

use std::collections::HashSet;

use nalgebra::SVD;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gpauli::{self, Dimension, PauliIndex, PhasedPauli};
use crate::linalg::{hs_inner, unitarity_defect, CMatrix, CVector, ZERO};

/// Tolerance for the unitarity and orthogonality checks on set members.
pub const MEMBER_TOL: f64 = 1e-10;

/// An ordered set of defining unitaries.
///
/// Construction validates that every member is unitary and that members are
/// pairwise trace-orthogonal (so the states are orthonormal). When every
/// member is a generalized Pauli operator the set carries a tag with the
/// exact labels, which the Fourier-cover prover and the orbit completion use.
#[derive(Clone, Debug)]
pub struct UnitarySet {
    d: Dimension,
    members: Vec<CMatrix>,
    tag: Option<Vec<PhasedPauli>>,
}

impl UnitarySet {
    /// Validates and wraps explicit unitaries.
    pub fn from_unitaries(d: Dimension, members: Vec<CMatrix>) -> Result<Self> {
        let dd = d.get();
        for (i, u) in members.iter().enumerate() {
            if u.nrows() != dd || u.ncols() != dd {
                return Err(Error::Input(format!(
                    "member {i} is {}x{}, expected {dd}x{dd}",
                    u.nrows(),
                    u.ncols()
                )));
            }
            let defect = unitarity_defect(u);
            if !(defect < MEMBER_TOL) {
                return Err(Error::NotUnitary(i, defect));
            }
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let t = hs_inner(&members[i], &members[j]).norm();
                if t > dd as f64 - MEMBER_TOL {
                    return Err(Error::Duplicate(format!(
                        "members {i} and {j} define the same state"
                    )));
                }
                if t >= MEMBER_TOL {
                    return Err(Error::NotOrthogonal(i, j, t));
                }
            }
        }
        Ok(UnitarySet {
            d,
            members,
            tag: None,
        })
    }

    fn from_paulis(d: Dimension, tag: Vec<PhasedPauli>) -> Self {
        let members = tag.iter().map(|&p| gpauli::to_matrix(d, p)).collect();
        UnitarySet {
            d,
            members,
            tag: Some(tag),
        }
    }

    pub fn d(&self) -> Dimension {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    /// Exact generalized-Pauli labels, when every member is one.
    pub fn tag(&self) -> Option<&[PhasedPauli]> {
        self.tag.as_deref()
    }

    /// Unphased labels of a tagged set.
    pub fn indices(&self) -> Option<Vec<PauliIndex>> {
        self.tag
            .as_ref()
            .map(|t| t.iter().map(|p| p.index).collect())
    }

    /// The bipartite state `(I ⊗ U_i)|ψ₀⟩`, indexed `a·d + b` for `|a⟩|b⟩`.
    pub fn state_vector(&self, i: usize) -> CVector {
        let dd = self.d.get();
        let u = &self.members[i];
        let norm = 1.0 / (dd as f64).sqrt();
        CVector::from_fn(dd * dd, |idx, _| u[(idx % dd, idx / dd)] * norm)
    }

    /// SHA-256 over `d` and the member entries (row-major, `re` then `im`,
    /// little-endian `f64`), hex encoded.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.d.get() as u64).to_le_bytes());
        h.update((self.members.len() as u64).to_le_bytes());
        for u in &self.members {
            for r in 0..u.nrows() {
                for c in 0..u.ncols() {
                    let z = u[(r, c)];
                    h.update(z.re.to_le_bytes());
                    h.update(z.im.to_le_bytes());
                }
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Largest `|Tr(U_i† U_j)|` over distinct pairs.
    pub fn max_overlap(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                worst = worst.max(hs_inner(&self.members[i], &self.members[j]).norm());
            }
        }
        worst
    }

    /// Largest `‖U†U − I‖_max` over members.
    pub fn max_unitarity_defect(&self) -> f64 {
        self.members
            .iter()
            .map(unitarity_defect)
            .fold(0.0, f64::max)
    }
}

impl PartialEq for UnitarySet {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.members == other.members && self.tag == other.tag
    }
}

/// Generalized Bell set `{U_p : p ∈ indices}`.
pub fn bell_set(d: Dimension, indices: &[PauliIndex]) -> Result<UnitarySet> {
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
    Ok(UnitarySet::from_paulis(
        d,
        indices.iter().copied().map(PhasedPauli::unphased).collect(),
    ))
}

/// Smallest `s` with `s² ≥ d`.
pub fn ceil_sqrt(d: usize) -> usize {
    let mut s = (d as f64).sqrt() as usize;
    while s * s < d {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= d {
        s -= 1;
    }
    s
}

/// The `3⌈√d⌉ − 1` count of the generalized-Bell construction.
pub fn theorem1_nominal_size(d: usize) -> usize {
    3 * ceil_sqrt(d) - 1
}

/// Labels of the generalized-Bell construction with `s = ⌈√d⌉`:
///
/// * shift 0: clock powers `0, …, s−1`, then `ks − 1` for `k = 2, …, s−1`, then `d − 1`;
/// * shift 1: clock powers `ks − 1` for `k = 1, …, s−1`, then `d − 1`.
///
/// Powers are reduced mod `d` and repeated labels dropped. Two dimension
/// ranges make the raw list collapse:
///
/// * `d = s(s−1)`: `(s−1)s − 1 = d − 1` repeats in both groups and the set
///   has `3s − 3` members;
/// * `(s−1)² < d < s(s−1)`: `(s−1)s − 1` wraps past `d` onto one of the
///   small shift-0 powers. The shift-0 group is then topped up with the
///   smallest unused clock power so the set keeps `3s − 1` members.
///
/// Neither case affects the exclusion argument, which only needs the
/// difference covers; see [`crate::certify::fourier_cover_prover`].
pub fn theorem1_indices(d: Dimension) -> Result<Vec<PauliIndex>> {
    let dd = d.get();
    if dd < 4 {
        return Err(Error::Input(format!(
            "the generalized-Bell construction needs d >= 4, got {dd}"
        )));
    }
    let s = ceil_sqrt(dd);
    let mut shift0: Vec<usize> = (0..s).collect();
    shift0.extend((2..s).map(|k| k * s - 1));
    shift0.push(dd - 1);
    let mut shift1: Vec<usize> = (1..s).map(|k| k * s - 1).collect();
    shift1.push(dd - 1);

    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(3 * s);
    for (n, group) in [(0usize, &shift0), (1, &shift1)] {
        for &m in group.iter() {
            let p = PauliIndex { m: m % dd, n };
            if seen.insert(p) {
                out.push(p);
            }
        }
        if n == 0 && s * (s - 1) > dd {
            let target = shift0.len();
            let mut filler = 0;
            while out.len() < target {
                let p = PauliIndex { m: filler, n: 0 };
                if seen.insert(p) {
                    out.push(p);
                }
                filler += 1;
            }
        }
    }
    Ok(out)
}

/// Generalized-Bell set that no one-way protocol can discriminate.
pub fn theorem1_set(d: Dimension) -> Result<UnitarySet> {
    bell_set(d, &theorem1_indices(d)?)
}

/// Parameters of the four-state block construction in odd `d ≥ 7`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Theorem2Spec {
    d: Dimension,
    omega: Complex64,
    gamma: Complex64,
    sigma: Complex64,
}

impl Theorem2Spec {
    pub const PHASE_TOL: f64 = 1e-12;
    pub const FORBIDDEN_GAP: f64 = 1e-9;

    pub fn new(d: Dimension, omega: Complex64, gamma: Complex64, sigma: Complex64) -> Result<Self> {
        let dd = d.get();
        if dd < 7 || dd.is_multiple_of(2) {
            return Err(Error::Input(format!(
                "block construction needs odd d >= 7, got {dd}"
            )));
        }
        for (name, z) in [("omega", omega), ("gamma", gamma), ("sigma", sigma)] {
            if !((z.norm() - 1.0).abs() < Self::PHASE_TOL) {
                return Err(Error::Input(format!(
                    "{name} must have unit modulus, |{name}| = {}",
                    z.norm()
                )));
            }
        }
        // conj(γ) must avoid ±i·conj(ω)².
        let forbidden = Complex64::i() * omega.conj() * omega.conj();
        let g = gamma.conj();
        let gap = (g - forbidden).norm().min((g + forbidden).norm());
        if !(gap > Self::FORBIDDEN_GAP) {
            return Err(Error::Input(format!(
                "phase condition violated: conj(gamma) = ±i·conj(omega)^2 (distance {gap:.3e})"
            )));
        }
        Ok(Theorem2Spec {
            d,
            omega,
            gamma,
            sigma,
        })
    }

    /// `ω = 1`, `γ = e^{iπ/4}`, `σ = 1`.
    pub fn with_defaults(d: Dimension) -> Result<Self> {
        Self::new(
            d,
            Self::default_omega(),
            Self::default_gamma(),
            Self::default_sigma(),
        )
    }

    pub fn default_omega() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    pub fn default_gamma() -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
    }

    pub fn default_sigma() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    pub fn d(&self) -> Dimension {
        self.d
    }

    /// Size of the cyclic block, `d − 2`.
    pub fn r(&self) -> usize {
        self.d.get() - 2
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }
}

/// `r×r` cyclic permutation raised to `power`: `|j⟩ ↦ |j + power mod r⟩`.
pub fn cyclic_permutation(r: usize, power: usize) -> CMatrix {
    let mut p = CMatrix::zeros(r, r);
    for j in 0..r {
        p[((j + power) % r, j)] = Complex64::new(1.0, 0.0);
    }
    p
}

fn block_diag(top: &CMatrix, bottom: &CMatrix) -> CMatrix {
    let (a, b) = (top.nrows(), bottom.nrows());
    let mut m = CMatrix::zeros(a + b, a + b);
    m.view_mut((0, 0), (a, a)).copy_from(top);
    m.view_mut((a, a), (b, b)).copy_from(bottom);
    m
}

/// `{I, diag(ωX, P), diag(γZ, P²), diag(σY, P^{(r+1)/2})}`.
pub fn theorem2_set(spec: &Theorem2Spec) -> Result<UnitarySet> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let x = CMatrix::from_row_slice(2, 2, &[ZERO, c(1.0, 0.0), c(1.0, 0.0), ZERO]);
    let y = CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]);
    let z = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)]);
    let r = spec.r();
    let dd = spec.d.get();
    let members = vec![
        CMatrix::identity(dd, dd),
        block_diag(&(x * spec.omega), &cyclic_permutation(r, 1)),
        block_diag(&(z * spec.gamma), &cyclic_permutation(r, 2)),
        block_diag(&(y * spec.sigma), &cyclic_permutation(r, r.div_ceil(2))),
    ];
    UnitarySet::from_unitaries(spec.d, members)
}

/// Member-wise transpose. Running an `A → B` decision on the result decides
/// `B → A` for the original set.
pub fn transpose_set(s: &UnitarySet) -> UnitarySet {
    let d = s.d;
    UnitarySet {
        d,
        members: s.members.iter().map(|u| u.transpose()).collect(),
        tag: s
            .tag
            .as_ref()
            .map(|t| t.iter().map(|&p| gpauli::transpose_phased(d, p)).collect()),
    }
}

/// Whether a unit vector in `C^d ⊗ C^d` has a flat Schmidt spectrum
/// (every singular value of its `d×d` reshaping equal to `1/√d`).
pub fn check_maximally_entangled(d: Dimension, state: &CVector) -> Result<bool> {
    let dd = d.get();
    if state.len() != dd * dd {
        return Err(Error::Input(format!(
            "state has length {}, expected {}",
            state.len(),
            dd * dd
        )));
    }
    let norm = state.norm();
    if !((norm - 1.0).abs() < MEMBER_TOL) {
        return Err(Error::NotNormalized(norm));
    }
    let m = CMatrix::from_fn(dd, dd, |a, b| state[a * dd + b]);
    let target = 1.0 / (dd as f64).sqrt();
    let svd = SVD::new(m, false, false);
    Ok(svd
        .singular_values
        .iter()
        .all(|s| (s - target).abs() < 1e-8))
}

/// On-disk description of a set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SetFile {
    GeneralizedBell {
        d: usize,
        indices: Vec<PauliIndex>,
    },
    Explicit {
        d: usize,
        /// `unitaries[k][row][col] = [re, im]`.
        unitaries: Vec<Vec<Vec<[f64; 2]>>>,
    },
    Theorem1 {
        d: usize,
    },
    Theorem2 {
        d: usize,
        #[serde(default = "default_omega_pair")]
        omega: [f64; 2],
        #[serde(default = "default_gamma_pair")]
        gamma: [f64; 2],
        #[serde(default = "default_sigma_pair")]
        sigma: [f64; 2],
    },
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn default_omega_pair() -> [f64; 2] {
    pair(Theorem2Spec::default_omega())
}

fn default_gamma_pair() -> [f64; 2] {
    pair(Theorem2Spec::default_gamma())
}

fn default_sigma_pair() -> [f64; 2] {
    pair(Theorem2Spec::default_sigma())
}

impl SetFile {
    pub fn build(&self) -> Result<UnitarySet> {
        match self {
            SetFile::GeneralizedBell { d, indices } => bell_set(Dimension::new(*d)?, indices),
            SetFile::Theorem1 { d } => theorem1_set(Dimension::new(*d)?),
            SetFile::Theorem2 {
                d,
                omega,
                gamma,
                sigma,
            } => {
                let z = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
                theorem2_set(&Theorem2Spec::new(
                    Dimension::new(*d)?,
                    z(omega),
                    z(gamma),
                    z(sigma),
                )?)
            }
            SetFile::Explicit { d, unitaries } => {
                let dim = Dimension::new(*d)?;
                let mut members = Vec::with_capacity(unitaries.len());
                for (k, rows) in unitaries.iter().enumerate() {
                    if rows.len() != *d || rows.iter().any(|r| r.len() != *d) {
                        return Err(Error::Input(format!("unitary {k} is not {d}x{d}")));
                    }
                    members.push(CMatrix::from_fn(*d, *d, |r, c| {
                        let [re, im] = rows[r][c];
                        Complex64::new(re, im)
                    }));
                }
                UnitarySet::from_unitaries(dim, members)
            }
        }
    }

    /// Explicit description of a set (tags are not preserved).
    pub fn explicit(set: &UnitarySet) -> SetFile {
        let unitaries = set
            .members()
            .iter()
            .map(|u| {
                (0..u.nrows())
                    .map(|r| (0..u.ncols()).map(|c| pair(u[(r, c)])).collect())
                    .collect()
            })
            .collect();
        SetFile::Explicit {
            d: set.d().get(),
            unitaries,
        }
    }

    /// Compact description when the set is an unphased generalized-Bell set.
    pub fn describe(set: &UnitarySet) -> SetFile {
        match set.tag() {
            Some(tag) if tag.iter().all(|p| p.phase.0 == 0) => SetFile::GeneralizedBell {
                d: set.d().get(),
                indices: tag.iter().map(|p| p.index).collect(),
            },
            _ => SetFile::explicit(set),
        }
    }
}

//! Generalized Pauli (Weyl–Heisenberg) operators on a `d`-level system.
//!
//! The operator labelled by `(m, n)` acts on the computational basis as
//!
//! ```text
//! U_{mn} |j> = ω^{m·j} |j ⊕ n>,      ω = exp(2πi / d)
//! ```
//!
//! so `m` is the clock (phase) power and `n` the cyclic shift. All phase
//! bookkeeping is done on integer exponents mod `d`; floating point only
//! appears when an operator is realized as a dense matrix.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

/// Local dimension `d ≥ 2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(d));
        }
        Ok(Dimension(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Reduces a signed integer into `0..d`.
    #[inline]
    pub fn reduce(self, x: i64) -> usize {
        x.rem_euclid(self.0 as i64) as usize
    }

    /// `ω^k` as a floating point complex number.
    pub fn omega_pow(self, k: PhaseExponent) -> Complex64 {
        let k = k.0 % self.0;
        match (4 * k).checked_rem(self.0) {
            // Hit the quarter turns exactly so that e.g. Z for d = 2 or 4 has
            // exact integer entries.
            Some(0) => match 4 * k / self.0 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            },
            _ => Complex64::from_polar(1.0, TAU * k as f64 / self.0 as f64),
        }
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;
    fn try_from(d: usize) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exponent `k` of the scalar `ω^k`, kept reduced mod `d`.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct PhaseExponent(pub usize);

impl PhaseExponent {
    pub fn new(d: Dimension, k: i64) -> Self {
        PhaseExponent(d.reduce(k))
    }

    pub fn add(self, d: Dimension, other: PhaseExponent) -> Self {
        PhaseExponent((self.0 + other.0) % d.get())
    }

    pub fn neg(self, d: Dimension) -> Self {
        PhaseExponent((d.get() - self.0 % d.get()) % d.get())
    }
}

/// Label `(m, n)` of `U_{mn}`; serialized as `[m, n]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct PauliIndex {
    /// Clock power.
    pub m: usize,
    /// Cyclic shift.
    pub n: usize,
}

impl PauliIndex {
    pub const IDENTITY: PauliIndex = PauliIndex { m: 0, n: 0 };

    pub fn new(d: Dimension, m: i64, n: i64) -> Self {
        PauliIndex {
            m: d.reduce(m),
            n: d.reduce(n),
        }
    }

    pub fn is_valid(self, d: Dimension) -> bool {
        self.m < d.get() && self.n < d.get()
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl From<[usize; 2]> for PauliIndex {
    fn from([m, n]: [usize; 2]) -> Self {
        PauliIndex { m, n }
    }
}

impl From<PauliIndex> for [usize; 2] {
    fn from(p: PauliIndex) -> Self {
        [p.m, p.n]
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// `ω^phase · U_index`. Closed under products and adjoints.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasedPauli {
    pub phase: PhaseExponent,
    pub index: PauliIndex,
}

impl PhasedPauli {
    pub fn unphased(index: PauliIndex) -> Self {
        PhasedPauli {
            phase: PhaseExponent(0),
            index,
        }
    }

    /// `(ω^a U_p)(ω^b U_q) = ω^{a + b + m_p·n_q} U_{p+q}`.
    pub fn mul(self, d: Dimension, rhs: PhasedPauli) -> PhasedPauli {
        let (p, q) = (self.index, rhs.index);
        let dd = d.get();
        let phase = (self.phase.0 + rhs.phase.0 + p.m * q.n) % dd;
        PhasedPauli {
            phase: PhaseExponent(phase),
            index: PauliIndex {
                m: (p.m + q.m) % dd,
                n: (p.n + q.n) % dd,
            },
        }
    }

    /// `(ω^k U_{mn})† = ω^{mn − k} U_{−m,−n}`.
    pub fn adjoint(self, d: Dimension) -> PhasedPauli {
        let PauliIndex { m, n } = self.index;
        PhasedPauli {
            phase: PhaseExponent::new(d, (m * n) as i64 - self.phase.0 as i64),
            index: PauliIndex::new(d, -(m as i64), -(n as i64)),
        }
    }

    /// Trace of the operator: `d·ω^phase` for the identity label, zero otherwise.
    pub fn trace(self, d: Dimension) -> Complex64 {
        if self.index.is_identity() {
            d.omega_pow(self.phase) * d.get() as f64
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Writes `self · v` into `out` in O(d).
    pub fn apply_to(self, d: Dimension, v: &[Complex64], out: &mut [Complex64]) {
        let dd = d.get();
        let PauliIndex { m, n } = self.index;
        for (j, &x) in v.iter().enumerate() {
            let k = PhaseExponent((self.phase.0 + m * j) % dd);
            out[(j + n) % dd] = d.omega_pow(k) * x;
        }
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}·U{}", self.phase.0, self.index)
    }
}

/// `U_{mn}|j> = ω^{mj}|j ⊕ n>`, returned as `(phase exponent, image index)`.
pub fn apply(d: Dimension, p: PauliIndex, j: usize) -> Result<(PhaseExponent, usize)> {
    let dd = d.get();
    if j >= dd {
        return Err(Error::BasisIndex { index: j, d: dd });
    }
    if !p.is_valid(d) {
        return Err(Error::Input(format!(
            "Pauli index {p} out of range for d = {dd}"
        )));
    }
    Ok((PhaseExponent((p.m * j) % dd), (j + p.n) % dd))
}

/// `U_a† U_b = ω^{m_a(n_a − n_b)} U_{(m_b − m_a), (n_b − n_a)}`.
pub fn adjoint_product(d: Dimension, a: PauliIndex, b: PauliIndex) -> PhasedPauli {
    let phase = a.m as i64 * (a.n as i64 - b.n as i64);
    PhasedPauli {
        phase: PhaseExponent::new(d, phase),
        index: PauliIndex::new(d, b.m as i64 - a.m as i64, b.n as i64 - a.n as i64),
    }
}

/// `U_{mn}^T = ω^{−mn} U_{m,−n}`.
pub fn transpose_index(d: Dimension, p: PauliIndex) -> PhasedPauli {
    PhasedPauli {
        phase: PhaseExponent::new(d, -((p.m * p.n) as i64)),
        index: PauliIndex::new(d, p.m as i64, -(p.n as i64)),
    }
}

/// Transpose of a phased operator; the scalar factor passes through.
pub fn transpose_phased(d: Dimension, p: PhasedPauli) -> PhasedPauli {
    let t = transpose_index(d, p.index);
    PhasedPauli {
        phase: t.phase.add(d, p.phase),
        index: t.index,
    }
}

/// Dense realization; one nonzero of unit modulus per column.
pub fn to_matrix(d: Dimension, p: PhasedPauli) -> CMatrix {
    let dd = d.get();
    let mut out = CMatrix::zeros(dd, dd);
    let PauliIndex { m, n } = p.index;
    for j in 0..dd {
        let k = PhaseExponent((p.phase.0 + m * j) % dd);
        out[((j + n) % dd, j)] = d.omega_pow(k);
    }
    out
}

/// All `d²` labels in lexicographic `(m, n)` order.
pub fn all_indices(d: Dimension) -> impl Iterator<Item = PauliIndex> {
    let dd = d.get();
    (0..dd).flat_map(move |m| (0..dd).map(move |n| PauliIndex { m, n }))
}

/// Applies a dense vector version of `U_{mn}` (convenience for tests and
/// orbit constructions).
pub fn apply_vector(d: Dimension, p: PhasedPauli, v: &CVector) -> CVector {
    let mut out = CVector::zeros(v.len());
    p.apply_to(d, v.as_slice(), out.as_mut_slice());
    out
}

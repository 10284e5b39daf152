//! Exact provers of one-way indistinguishability and their certificates.
//!
//! Two independent arguments are mechanized:
//!
//! * [`cover`]: for generalized-Bell sets, label differences that cover the
//!   whole DFT spectrum of two autocorrelation shifts leave no witness.
//! * [`block`]: for arbitrary sets, a principal block forced to be scalar on
//!   the feasible subspace ([`feasible`]) leaves no rank-one resolution of
//!   the identity.
//!
//! Certificates are plain data and can be re-checked with
//! [`verify_certificate`], which shares no code path with the provers.

pub mod block;
pub mod cover;
pub mod feasible;
pub mod verify;

use serde::{Deserialize, Serialize};

pub use block::{block_identity_prover, scan_blocks, BlockCertificate, BlockOutcome, BLOCK_TOL};
pub use cover::{
    constraints_from_set, fourier_cover_prover, CorrelationConstraintSystem, CoverCertificate,
    CoverOutcome,
};
pub use feasible::{hermitian_feasible_subspace, FeasibleSubspace};
pub use verify::{verify_certificate, Verification};

use crate::states::{transpose_set, UnitarySet};

/// Which party measures first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "A_to_B")]
    AToB,
    #[serde(rename = "B_to_A")]
    BToA,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::AToB, Direction::BToA];

    /// The set whose `A → B` problem is this direction's problem.
    pub fn apply(self, set: &UnitarySet) -> UnitarySet {
        match self {
            Direction::AToB => set.clone(),
            Direction::BToA => transpose_set(set),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::AToB => "A_to_B",
            Direction::BToA => "B_to_A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Proof {
    FourierCover(CoverCertificate),
    ForcedBlock(BlockCertificate),
}

/// Self-contained proof that no one-way protocol in `direction` perfectly
/// discriminates the set with hash `set_hash`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub proof: Proof,
    pub direction: Direction,
    pub set_hash: String,
    pub tool_version: String,
}

impl Certificate {
    pub fn new(proof: Proof, direction: Direction, original: &UnitarySet) -> Self {
        Certificate {
            proof,
            direction,
            set_hash: original.content_hash(),
            tool_version: crate::TOOL_VERSION.to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.proof {
            Proof::FourierCover(_) => "fourier_cover",
            Proof::ForcedBlock(_) => "forced_block",
        }
    }
}

/// Options for [`certify`].
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProverConfig {
    pub block_tolerance: f64,
    pub max_block: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            block_tolerance: BLOCK_TOL,
            max_block: 2,
        }
    }
}

/// Runs the cover prover (generalized-Bell sets only), then the block scan.
/// Returns the first certificate that also passes [`verify_certificate`].
pub fn certify(
    original: &UnitarySet,
    direction: Direction,
    cfg: &ProverConfig,
) -> Option<Certificate> {
    let examined = direction.apply(original);
    if let Some(indices) = examined.indices() {
        let cover = constraints_from_set(&indices, examined.d())
            .ok()
            .and_then(|c| fourier_cover_prover(&c).certificate());
        if let Some(c) = cover {
            let cert = Certificate::new(Proof::FourierCover(c), direction, original);
            if verify_certificate(&cert, original).is_valid() {
                return Some(cert);
            }
        }
    }
    if examined.len() < 2 {
        return None;
    }
    let fs = hermitian_feasible_subspace(&examined).ok()?;
    let block = scan_blocks(&fs, cfg.max_block, cfg.block_tolerance).certificate()?;
    let cert = Certificate::new(Proof::ForcedBlock(block), direction, original);
    verify_certificate(&cert, original)
        .is_valid()
        .then_some(cert)
}

//! One-way LOCC distinguishability of maximally entangled qudit states.
//!
//! * [`gpauli`]: exact generalized Pauli algebra.
//! * [`states`]: generalized-Bell sets and the four-state block construction.
//! * [`certify`]: exact exclusion provers and an independent certificate checker.
//! * [`search`]: witness search, measurement completion, protocol simulation
//!   and the combined [`search::decide`] pipeline.
//! * [`sweep`]: size table against the `⌈d/2⌉ + 2` bound.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod error;
pub mod gpauli;
pub mod linalg;
pub mod search;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use gpauli::{Dimension, PauliIndex, PhaseExponent, PhasedPauli};
pub use states::{SetFile, Theorem2Spec, UnitarySet};

/// Version string embedded in certificates and reports.
pub const TOOL_VERSION: &str = concat!("entdis ", env!("CARGO_PKG_VERSION"));

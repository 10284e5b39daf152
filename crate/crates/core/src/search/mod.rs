//! Numerical side of the decision: witness search on the unit sphere,
//! completion to a measurement, protocol simulation, and [`decide`].

pub mod decide;
pub mod penalty;
pub mod povm;
pub mod simulate;
pub mod witness;

pub use decide::{decide, decide_direction, DecideReport, DirectionReport, Verdict};
pub use penalty::{penalty, PenaltyEval};
pub use povm::{orbit_povm, povm_completion, Completion, Povm, PovmElement};
pub use simulate::simulate_protocol;
pub use witness::{search_all, witness_search, OptimizerConfig, SearchRun, Witness};

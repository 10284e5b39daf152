//! The combined decision: exact provers first, then witness search and
//! measurement completion, in both one-way directions.

use serde::{Deserialize, Serialize};

use super::povm::{povm_completion, Completion, Povm};
use super::simulate::simulate_protocol;
use super::witness::{search_all, OptimizerConfig, Witness};
use crate::certify::{certify, Certificate, Direction, ProverConfig};
use crate::error::Result;
use crate::states::UnitarySet;

/// Trials used for the simulated success rate of a distinguishable verdict.
pub const SIMULATION_TRIALS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Distinguishable {
        witness: Witness,
        povm: Povm,
        simulated_success: f64,
    },
    Indistinguishable {
        certificate: Certificate,
    },
    /// Search failed and the provers were silent. `witness` is attached
    /// when one was found but could not be completed to a measurement;
    /// `near_witness` flags a best residual between the two thresholds.
    Unknown {
        best_residual: f64,
        restarts_used: usize,
        near_witness: bool,
        witness: Option<Witness>,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Distinguishable { .. } => "distinguishable",
            Verdict::Indistinguishable { .. } => "indistinguishable",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_indistinguishable(&self) -> bool {
        matches!(self, Verdict::Indistinguishable { .. })
    }
}

/// One direction's outcome, in its JSON shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionReport {
    pub direction: Direction,
    pub verdict: String,
    pub witness: Option<Witness>,
    pub povm_size: Option<usize>,
    pub simulated_success: Option<f64>,
    pub certificate: Option<Certificate>,
    /// `null` when a certificate made the search unnecessary.
    pub best_residual: Option<f64>,
    pub near_witness: bool,
    pub config: OptimizerConfig,
}

impl DirectionReport {
    pub fn new(direction: Direction, verdict: &Verdict, cfg: &OptimizerConfig) -> Self {
        let mut r = DirectionReport {
            direction,
            verdict: verdict.label().to_string(),
            witness: None,
            povm_size: None,
            simulated_success: None,
            certificate: None,
            best_residual: None,
            near_witness: false,
            config: *cfg,
        };
        match verdict {
            Verdict::Distinguishable {
                witness,
                povm,
                simulated_success,
            } => {
                r.best_residual = Some(witness.residual);
                r.witness = Some(witness.clone());
                r.povm_size = Some(povm.len());
                r.simulated_success = Some(*simulated_success);
            }
            Verdict::Indistinguishable { certificate } => r.certificate = Some(certificate.clone()),
            Verdict::Unknown {
                best_residual,
                near_witness,
                witness,
                ..
            } => {
                r.best_residual = Some(*best_residual);
                r.near_witness = *near_witness;
                r.witness = witness.clone();
            }
        }
        r
    }
}

/// Both directions plus provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecideReport {
    pub tool_version: String,
    pub input_hash: String,
    pub d: usize,
    pub set_size: usize,
    /// True only when both directions are certified.
    pub one_way_indistinguishable: bool,
    pub directions: Vec<DirectionReport>,
}

/// Decides one direction.
pub fn decide_direction(
    set: &UnitarySet,
    direction: Direction,
    cfg: &OptimizerConfig,
) -> Result<Verdict> {
    cfg.validate()?;
    if let Some(certificate) = certify(set, direction, &ProverConfig::default()) {
        return Ok(Verdict::Indistinguishable { certificate });
    }
    let examined = direction.apply(set);
    let run = search_all(&examined, cfg)?;
    let best = run.best().clone();
    if best.residual < cfg.success_tol {
        let pool: Vec<Witness> = std::iter::once(best.clone())
            .chain(
                run.below(cfg.success_tol)
                    .filter(|w| w.restart != best.restart)
                    .cloned(),
            )
            .collect();
        if let Completion::Complete(povm) = povm_completion(&examined, &pool, cfg.success_tol)? {
            let simulated_success =
                simulate_protocol(&examined, &povm, SIMULATION_TRIALS, cfg.seed)?;
            return Ok(Verdict::Distinguishable {
                witness: best,
                povm,
                simulated_success,
            });
        }
        return Ok(Verdict::Unknown {
            best_residual: best.residual,
            restarts_used: cfg.restarts,
            near_witness: false,
            witness: Some(best),
        });
    }
    Ok(Verdict::Unknown {
        best_residual: best.residual,
        restarts_used: cfg.restarts,
        near_witness: best.residual <= cfg.failure_floor,
        witness: None,
    })
}

/// Decides `A → B` and `B → A`.
pub fn decide(set: &UnitarySet, cfg: &OptimizerConfig) -> Result<DecideReport> {
    let mut directions = Vec::with_capacity(2);
    for dir in Direction::BOTH {
        let v = decide_direction(set, dir, cfg)?;
        directions.push(DirectionReport::new(dir, &v, cfg));
    }
    Ok(DecideReport {
        tool_version: crate::TOOL_VERSION.to_string(),
        input_hash: set.content_hash(),
        d: set.d().get(),
        set_size: set.len(),
        one_way_indistinguishable: directions.iter().all(|r| r.verdict == "indistinguishable"),
        directions,
    })
}

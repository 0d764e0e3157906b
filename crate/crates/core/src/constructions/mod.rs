//! Explicit representation factory: rotation recipes, the pants and
//! one-holed-torus building blocks, assembly planners for each boundary
//! regime, and the unitary torus builders.

pub mod blocks;
pub mod planner;
pub mod so2;
pub mod unitary;

pub use blocks::{block, catalog, phi_block, torus_commutator_boundary, torus_elliptic, trivial_rep};
pub use planner::{execute, glue_at, PlanNode, Planned};
pub use so2::{so2_rep, So2Mode};
pub use unitary::{up_rep, upq_genus0_rep};

use crate::error::{Error, Result};
use crate::rational::Q;
use serde::{Deserialize, Serialize};

/// Target of an assembly plan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanTarget {
    pub family: String,
    pub genus: usize,
    pub boundary: usize,
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

/// A target plus the replayable construction realizing it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssemblyPlan {
    pub target: PlanTarget,
    pub root: PlanNode,
}

/// The representation families the planners realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryMode {
    Paraelliptic,
    Hyperparabolic,
    Elliptic,
    So2Elliptic,
    So2Relaxed,
    Up { p: usize },
    UpqGenus0 { p: usize, q: usize },
}

impl BoundaryMode {
    pub fn parse(family: &str, p: Option<usize>, q: Option<usize>) -> Result<Self> {
        Ok(match family {
            "paraelliptic" => BoundaryMode::Paraelliptic,
            "hyperparabolic" => BoundaryMode::Hyperparabolic,
            "elliptic" => BoundaryMode::Elliptic,
            "so2" => BoundaryMode::So2Elliptic,
            "so2-relaxed" => BoundaryMode::So2Relaxed,
            "up" => BoundaryMode::Up { p: p.unwrap_or(1) },
            "upq-genus0" => BoundaryMode::UpqGenus0 { p: p.unwrap_or(1), q: q.unwrap_or(0) },
            other => {
                return Err(Error::UnsupportedSurface(format!("unknown family '{other}'")))
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            BoundaryMode::Paraelliptic => "paraelliptic".into(),
            BoundaryMode::Hyperparabolic => "hyperparabolic".into(),
            BoundaryMode::Elliptic => "elliptic".into(),
            BoundaryMode::So2Elliptic => "so2".into(),
            BoundaryMode::So2Relaxed => "so2-relaxed".into(),
            BoundaryMode::Up { .. } => "up".into(),
            BoundaryMode::UpqGenus0 { .. } => "upq-genus0".into(),
        }
    }
}

/// Plan and build a certified representation of the target family.
pub fn construct(
    mode: BoundaryMode,
    g: usize,
    n: usize,
    m: i64,
    prescribed: Option<Q>,
) -> Result<(crate::surfaces::Representation, AssemblyPlan)> {
    let (rep, root, p, qq) = match mode {
        BoundaryMode::Paraelliptic => {
            let pl = planner::paraelliptic(g, n, m)?;
            (pl.rep, pl.node, None, None)
        }
        BoundaryMode::Hyperparabolic => {
            let pl = planner::hyperparabolic(g, n, m)?;
            (pl.rep, pl.node, None, None)
        }
        BoundaryMode::Elliptic => {
            let pl = planner::elliptic(g, n, m)?;
            (pl.rep, pl.node, None, None)
        }
        BoundaryMode::So2Elliptic | BoundaryMode::So2Relaxed => {
            let so2_mode = if mode == BoundaryMode::So2Elliptic {
                So2Mode::Elliptic
            } else {
                So2Mode::Relaxed
            };
            let rep = so2::so2_rep(g, n, m, prescribed, so2_mode)?;
            let angles = match &rep.provenance {
                crate::surfaces::Provenance::So2 { angles } => angles.clone(),
                _ => unreachable!(),
            };
            (rep, PlanNode::So2 { g, n, angles }, None, None)
        }
        BoundaryMode::Up { p } => {
            let rep = unitary::up_rep(g, n, p, m)?;
            let rows: Vec<Vec<String>> = rep
                .boundary_classes
                .iter()
                .map(|c| match c {
                    crate::surfaces::BoundaryClass::Torus { angles, .. } => {
                        angles.iter().map(crate::rational::q_render).collect()
                    }
                    _ => unreachable!(),
                })
                .collect();
            (rep, PlanNode::UpRep { g, n, p, rows }, Some(p), Some(0))
        }
        BoundaryMode::UpqGenus0 { p, q } => {
            let rep = unitary::upq_genus0_rep(n, p, q, m)?;
            (rep, PlanNode::UpqRep { n, p, q, m }, Some(p), Some(q))
        }
    };
    let plan = AssemblyPlan {
        target: PlanTarget { family: mode.name(), genus: g, boundary: n, m, p, q: qq },
        root,
    };
    Ok((rep, plan))
}

/// Replay a plan.
pub fn execute_plan(plan: &AssemblyPlan) -> Result<crate::surfaces::Representation> {
    execute(&plan.root)
}

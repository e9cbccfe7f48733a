use serde::{Deserialize, Serialize};

use super::local::{everywhere_locally_solvable, AggregateStatus, ElsReport};
use super::search::{find_rational_point_with, SearchOptions};
use super::{ChateletSurface, GlobalPoint};
use crate::error::Result;
use crate::local::Place;

/// Where a surface stands with respect to the Hasse principle, as far as
/// exact certificates and a bounded search can tell.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "classification", rename_all = "snake_case")]
pub enum HasseReport {
    HasPoint {
        point: GlobalPoint,
        local: ElsReport,
    },
    /// Locally solvable everywhere, and no point up to `height_bound`.
    CandidateHasseViolation {
        local: ElsReport,
        height_bound: u64,
    },
    LocallyObstructed {
        place: Place,
        local: ElsReport,
    },
    Undecided {
        local: ElsReport,
        height_bound: u64,
    },
}

impl HasseReport {
    pub fn local(&self) -> &ElsReport {
        match self {
            HasseReport::HasPoint { local, .. }
            | HasseReport::CandidateHasseViolation { local, .. }
            | HasseReport::LocallyObstructed { local, .. }
            | HasseReport::Undecided { local, .. } => local,
        }
    }

    pub fn point(&self) -> Option<&GlobalPoint> {
        match self {
            HasseReport::HasPoint { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            HasseReport::HasPoint { .. } => "has_point",
            HasseReport::CandidateHasseViolation { .. } => "candidate_hasse_violation",
            HasseReport::LocallyObstructed { .. } => "locally_obstructed",
            HasseReport::Undecided { .. } => "undecided",
        }
    }
}

/// Local certificates first; the point search is skipped when a place
/// obstructs.
pub fn hasse_violation_report(
    s: &ChateletSurface,
    opts: &SearchOptions,
    depth: u32,
) -> Result<HasseReport> {
    let local = everywhere_locally_solvable(s, depth)?;
    if let Some(entry) = local.first_obstruction() {
        return Ok(HasseReport::LocallyObstructed {
            place: entry.place.clone(),
            local,
        });
    }
    if let Some(point) = find_rational_point_with(s, opts)? {
        return Ok(HasseReport::HasPoint { point, local });
    }
    let height_bound = opts.height_bound;
    Ok(match local.status {
        AggregateStatus::Solvable => HasseReport::CandidateHasseViolation {
            local,
            height_bound,
        },
        _ => HasseReport::Undecided {
            local,
            height_bound,
        },
    })
}

//! Binary search over the cost ladder for the restricted inverse optimal
//! value problem.

use crate::error::SolveError;
use crate::feasibility::{build_cost_ladder, construct_riovspt_solution, is_feasible_cost, restricted_edge_set};
use crate::scalar::Scalar;
use crate::solution::{ChangedEdge, Status, WeightAssignment};
use crate::tree::Instance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport<T> {
    pub status: Status,
    /// Optimal bottleneck cost; `None` when infeasible.
    pub objective: Option<T>,
    /// Ladder rung of the objective (`0` when nothing had to change).
    pub rung: Option<usize>,
    pub assignment: Option<WeightAssignment<T>>,
    pub changed_edges: Vec<ChangedEdge<T>>,
    /// Number of feasibility checks (or search nodes, for the oracle).
    pub iterations: u64,
}

impl<T: Scalar> SolveReport<T> {
    pub(crate) fn infeasible(iterations: u64) -> Self {
        SolveReport {
            status: Status::Infeasible,
            objective: None,
            rung: None,
            assignment: None,
            changed_edges: Vec::new(),
            iterations,
        }
    }

    pub(crate) fn from_assignment(
        instance: &Instance<T>,
        status: Status,
        objective: T,
        rung: Option<usize>,
        assignment: WeightAssignment<T>,
        iterations: u64,
    ) -> Self {
        SolveReport {
            status,
            objective: Some(objective),
            rung,
            changed_edges: assignment.changed_edges(instance),
            assignment: Some(assignment),
            iterations,
        }
    }
}

/// Minimum bottleneck cost assignment in `[l, u]` with `P0` exactly `D` long
/// and every root-leaf path at least `D` long.
///
/// Rung `0` (no change) is tried first, then the top rung as an infeasibility
/// gate. Between them the search keeps `lo` infeasible and `hi` feasible,
/// which feasibility being monotone in the rung makes sound, and stops at
/// `hi = lo + 1`. `O(n log n)` overall.
pub fn solve_riovspt<T: Scalar>(instance: &Instance<T>) -> Result<SolveReport<T>, SolveError> {
    instance.designated_leaf()?;
    instance.require_target()?;

    let ladder = build_cost_ladder(instance);
    let mut checks = 0u64;
    let mut feasible = |rung: usize| -> Result<bool, SolveError> {
        checks += 1;
        is_feasible_cost(instance, &restricted_edge_set(&ladder, rung)?)
    };

    if feasible(0)? {
        return Ok(SolveReport::from_assignment(
            instance,
            Status::AlreadyOptimal,
            T::zero(),
            Some(0),
            WeightAssignment::unchanged(instance),
            checks,
        ));
    }
    let top = ladder.len();
    if !feasible(top)? {
        return Ok(SolveReport::infeasible(checks));
    }

    let (mut lo, mut hi) = (0, top);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let assignment = construct_riovspt_solution(instance, &restricted_edge_set(&ladder, hi)?)?;
    Ok(SolveReport::from_assignment(
        instance,
        Status::Solved,
        ladder.cost(hi),
        Some(hi),
        assignment,
        checks,
    ))
}

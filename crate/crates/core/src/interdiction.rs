//! Budgeted shortest-path maximisation and minimum-cost interdiction by
//! upgrading edges inside `[w, u]`.

use crate::error::SolveError;
use crate::feasibility::{build_cost_ladder, CostLadder};
use crate::scalar::Scalar;
use crate::solution::{Status, WeightAssignment};
use crate::tree::{Instance, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterdictionReport<T> {
    pub status: Status,
    /// Optimal bottleneck cost `M*`; `None` when infeasible.
    pub objective: Option<T>,
    pub rung: Option<usize>,
    pub assignment: Option<WeightAssignment<T>>,
    /// Shortest root-leaf path length under `assignment`.
    pub achieved_shortest: Option<T>,
    pub iterations: u64,
}

/// Leaf with the shortest root path under `weights` and that length. Ties go
/// to the first leaf in canonical order.
pub fn shortest_root_leaf<T: Scalar>(instance: &Instance<T>, weights: &[T]) -> (NodeId, T) {
    assert_eq!(weights.len(), instance.edge_count(), "one weight per edge");
    let tree = instance.tree();
    let lengths = tree.prefix_sums(|e| weights[e.index()]);
    tree.leaves()
        .iter()
        .map(|&leaf| (leaf, lengths[leaf.index()]))
        .reduce(|best, cand| if cand.1 < best.1 { cand } else { best })
        .expect("a tree with an edge has a leaf")
}

/// Optimal assignment for a bottleneck budget `M`: every edge with
/// `c(e) <= M` is raised to `u(e)`, every other edge keeps `w(e)`.
pub fn solve_mspit<T: Scalar>(instance: &Instance<T>, budget: T) -> WeightAssignment<T> {
    let weights = instance
        .attrs()
        .iter()
        .map(|a| if a.c <= budget { a.u } else { a.w })
        .collect();
    WeightAssignment::new(instance, weights)
}

/// `D_k`: shortest root-leaf length after upgrading every edge on rungs `<= k`.
pub fn upgraded_shortest<T: Scalar>(instance: &Instance<T>, ladder: &CostLadder<T>, rung: usize) -> T {
    let weights: Vec<T> = instance
        .tree()
        .edges()
        .map(|e| {
            let a = instance.attr(e);
            if ladder.rung_of_edge(e) <= rung {
                a.u
            } else {
                a.w
            }
        })
        .collect();
    shortest_root_leaf(instance, &weights).1
}

/// Cheapest bottleneck upgrade making every root-leaf path at least `D`.
///
/// `D <= D(w)` needs nothing; `D > D_{n*}` cannot be reached. Otherwise the
/// search keeps `D_lo < D <= D_hi` over rungs, using that `D_k` is
/// non-decreasing in `k`, with one budgeted evaluation per step.
pub fn solve_mcspit<T: Scalar>(instance: &Instance<T>) -> Result<InterdictionReport<T>, SolveError> {
    let target = instance.require_target()?;
    let ladder = build_cost_ladder(instance);
    let mut evaluations = 0u64;
    let mut shortest_at = |rung: usize| {
        evaluations += 1;
        upgraded_shortest(instance, &ladder, rung)
    };

    let current = shortest_at(0);
    if target <= current {
        return Ok(InterdictionReport {
            status: Status::AlreadyOptimal,
            objective: Some(T::zero()),
            rung: Some(0),
            assignment: Some(WeightAssignment::unchanged(instance)),
            achieved_shortest: Some(current),
            iterations: evaluations,
        });
    }
    let top = ladder.len();
    if shortest_at(top) < target {
        return Ok(InterdictionReport {
            status: Status::Infeasible,
            objective: None,
            rung: None,
            assignment: None,
            achieved_shortest: None,
            iterations: evaluations,
        });
    }

    let (mut lo, mut hi) = (0, top);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if shortest_at(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let objective = ladder.cost(hi);
    let assignment = solve_mspit(instance, objective);
    let achieved = shortest_root_leaf(instance, assignment.weights()).1;
    Ok(InterdictionReport {
        status: Status::Solved,
        objective: Some(objective),
        rung: Some(hi),
        assignment: Some(assignment),
        achieved_shortest: Some(achieved),
        iterations: evaluations,
    })
}

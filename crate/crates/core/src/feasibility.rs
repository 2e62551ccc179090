//! Cost ladder, restricted edge sets, the per-rung feasibility test for the
//! restricted inverse optimal value problem and the matching solution
//! constructor.

use crate::error::SolveError;
use crate::scalar::Scalar;
use crate::solution::WeightAssignment;
use crate::tree::{EdgeId, Instance, NodeId};

/// Distinct edge costs `C_1 < ... < C_n*` and the rung of every edge.
///
/// Rungs are 1-based; rung `0` stands for "no edge may change".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostLadder<T> {
    rungs: Vec<T>,
    rung_of_edge: Vec<usize>,
}

impl<T: Scalar> CostLadder<T> {
    /// Number of distinct costs, `n*`.
    pub fn len(&self) -> usize {
        self.rungs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rungs.is_empty()
    }

    pub fn rungs(&self) -> &[T] {
        &self.rungs
    }

    pub fn rung_of_edge(&self, edge: EdgeId) -> usize {
        self.rung_of_edge[edge.0]
    }

    /// `C_k`, with `C_0 = 0`.
    pub fn cost(&self, rung: usize) -> T {
        match rung {
            0 => T::zero(),
            k => self.rungs[k - 1],
        }
    }

    /// Number of rungs with cost `<= budget`: the restricted set a budget
    /// allows is exactly `E_k` for this `k`.
    pub fn rung_for_budget(&self, budget: T) -> usize {
        self.rungs.partition_point(|&c| c <= budget)
    }
}

pub fn build_cost_ladder<T: Scalar>(instance: &Instance<T>) -> CostLadder<T> {
    let mut rungs = instance.costs();
    rungs.sort_unstable();
    rungs.dedup();
    let rung_of_edge = instance
        .attrs()
        .iter()
        .map(|a| rungs.binary_search(&a.c).expect("cost is on the ladder") + 1)
        .collect();
    CostLadder { rungs, rung_of_edge }
}

/// `E_k = { e : c(e) <= C_k }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedEdgeSet {
    rung: usize,
    members: Vec<bool>,
}

impl RestrictedEdgeSet {
    pub fn rung(&self) -> usize {
        self.rung
    }

    pub fn contains(&self, edge: EdgeId) -> bool {
        self.members[edge.0]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn edge_count(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| EdgeId(i))
    }
}

pub fn restricted_edge_set<T: Scalar>(ladder: &CostLadder<T>, rung: usize) -> Result<RestrictedEdgeSet, SolveError> {
    if rung > ladder.len() {
        return Err(SolveError::RungOutOfRange {
            rung,
            len: ladder.len(),
        });
    }
    Ok(RestrictedEdgeSet {
        rung,
        members: ladder.rung_of_edge.iter().map(|&k| k <= rung).collect(),
    })
}

/// Per-leaf path sums for a fixed restricted set `E_k`, with `P0` the path to
/// the designated leaf:
///
/// * `lo0 = l(P0 ∩ E_k) + w(P0 \ E_k)`, the shortest `P0` can be made;
/// * `hi_i = u(P_i ∩ E_k) + w(P_i \ E_k)`, the longest `P_i` can be made;
/// * `mix_i = l(P_i ∩ P0 ∩ E_k) + u((P_i \ P0) ∩ E_k) + w(P_i \ E_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedPathSums<T> {
    lo0: T,
    leaves: Vec<NodeId>,
    hi: Vec<T>,
    mix: Vec<T>,
}

impl<T: Scalar> MixedPathSums<T> {
    pub fn lo0(&self) -> T {
        self.lo0
    }

    /// Leaves in canonical order; `hi()` and `mix()` are aligned with it.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn hi(&self) -> &[T] {
        &self.hi
    }

    pub fn mix(&self) -> &[T] {
        &self.mix
    }

    pub fn hi_of(&self, leaf: NodeId) -> Option<T> {
        self.position(leaf).map(|i| self.hi[i])
    }

    pub fn mix_of(&self, leaf: NodeId) -> Option<T> {
        self.position(leaf).map(|i| self.mix[i])
    }

    fn position(&self, leaf: NodeId) -> Option<usize> {
        self.leaves.binary_search(&leaf).ok()
    }
}

fn check_dims<T: Scalar>(instance: &Instance<T>, set: &RestrictedEdgeSet) -> Result<(), SolveError> {
    if set.edge_count() != instance.edge_count() {
        return Err(SolveError::DimensionMismatch {
            expected: instance.edge_count(),
            got: set.edge_count(),
        });
    }
    Ok(())
}

fn designated_path_mask<T: Scalar>(instance: &Instance<T>, t0: NodeId) -> Vec<bool> {
    let mut on_p0 = vec![false; instance.edge_count()];
    for e in instance.tree().path_edges(t0) {
        on_p0[e.0] = true;
    }
    on_p0
}

/// One top-down pass computing [`MixedPathSums`] in `O(n)`.
pub fn mixed_path_sums<T: Scalar>(
    instance: &Instance<T>,
    set: &RestrictedEdgeSet,
) -> Result<MixedPathSums<T>, SolveError> {
    check_dims(instance, set)?;
    let t0 = instance.designated_leaf()?;
    let tree = instance.tree();
    let on_p0 = designated_path_mask(instance, t0);

    let hi_at = tree.prefix_sums(|e| {
        let a = instance.attr(e);
        if set.contains(e) {
            a.u
        } else {
            a.w
        }
    });
    let mix_at = tree.prefix_sums(|e| {
        let a = instance.attr(e);
        match (set.contains(e), on_p0[e.0]) {
            (true, true) => a.l,
            (true, false) => a.u,
            (false, _) => a.w,
        }
    });

    let leaves = tree.leaves().to_vec();
    Ok(MixedPathSums {
        lo0: mix_at[t0.index()],
        hi: leaves.iter().map(|v| hi_at[v.index()]).collect(),
        mix: leaves.iter().map(|v| mix_at[v.index()]).collect(),
        leaves,
    })
}

/// Whether objective value `C_k` admits a feasible assignment, i.e. whether
/// changing only edges of `E_k` inside `[l, u]` can make `P0` exactly `D`
/// while keeping every root-leaf path at least `D`.
///
/// Holds iff `lo0 <= D <= hi_i` and `lo0 <= mix_i` for every leaf.
pub fn is_feasible_cost<T: Scalar>(instance: &Instance<T>, set: &RestrictedEdgeSet) -> Result<bool, SolveError> {
    let target = instance.require_target()?;
    let sums = mixed_path_sums(instance, set)?;
    let lo0 = sums.lo0;
    Ok(lo0 <= target && sums.hi.iter().all(|&h| target <= h) && sums.mix.iter().all(|&m| lo0 <= m))
}

/// Builds a feasible assignment whose changes lie inside `E_k`.
///
/// Walking `P0` from the root, the first edge `e_j = (v_i, v_j)` of
/// `P0 ∩ E_k` whose window
/// `[A + l(e_j) + B, A + u(e_j) + B]` contains `D` takes the value
/// `δ = D - A - B`, where `A` is the prefix above `v_i` with `E_k` edges at
/// `u` and `B` the suffix below `v_j` with `E_k` edges at `l`. Edges of `E_k`
/// on that suffix get `l`, every other edge of `E_k` gets `u`, the rest keep
/// `w`.
pub fn construct_riovspt_solution<T: Scalar>(
    instance: &Instance<T>,
    set: &RestrictedEdgeSet,
) -> Result<WeightAssignment<T>, SolveError> {
    if !is_feasible_cost(instance, set)? {
        return Err(SolveError::InfeasibleRung { rung: set.rung() });
    }
    let target = instance.require_target()?;
    let t0 = instance.designated_leaf()?;
    let p0 = instance.tree().path_edges(t0);

    // suffix[p] = value of P0 strictly below position p with E_k edges at l
    let mut suffix = vec![T::zero(); p0.len() + 1];
    for (p, &e) in p0.iter().enumerate().rev() {
        let a = instance.attr(e);
        suffix[p] = suffix[p + 1] + if set.contains(e) { a.l } else { a.w };
    }

    let mut prefix = T::zero();
    let mut pivot = None;
    for (p, &e) in p0.iter().enumerate() {
        let a = instance.attr(e);
        if set.contains(e) {
            let below = suffix[p + 1];
            if prefix + a.l + below <= target && target <= prefix + a.u + below {
                pivot = Some((p, target - prefix - below));
                break;
            }
            prefix = prefix + a.u;
        } else {
            prefix = prefix + a.w;
        }
    }

    let mut position_on_p0 = vec![None; instance.edge_count()];
    for (p, &e) in p0.iter().enumerate() {
        position_on_p0[e.0] = Some(p);
    }

    let pivot = match pivot {
        Some(pivot) => Some(pivot),
        // P0 ∩ E_k empty: feasibility already forced w(P0) = D.
        None if p0.iter().all(|&e| !set.contains(e)) => None,
        None => return Err(SolveError::InfeasibleRung { rung: set.rung() }),
    };

    let weights = instance
        .tree()
        .edges()
        .map(|e| {
            let a = instance.attr(e);
            if !set.contains(e) {
                return a.w;
            }
            match (position_on_p0[e.0], pivot) {
                (Some(p), Some((j, delta))) if p == j => delta,
                (Some(p), Some((j, _))) if p > j => a.l,
                _ => a.u,
            }
        })
        .collect();
    Ok(WeightAssignment::new(instance, weights))
}

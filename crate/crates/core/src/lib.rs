//! Solvers for two inverse-optimization problems on edge-weighted rooted trees
//! measured by the weighted bottleneck Hamming distance:
//!
//! * the restricted inverse optimal value problem on shortest root-leaf paths
//!   ([`riovspt::solve_riovspt`]): adjust weights inside `[l, u]` so that every
//!   root-leaf path is at least `D` long and a designated path is exactly `D`;
//! * the minimum-cost shortest-path interdiction problem
//!   ([`interdiction::solve_mcspit`]): upgrade weights inside `[w, u]` so that
//!   every root-leaf path is at least `D` long.
//!
//! The objective in both cases is the largest cost `c(e)` among edges whose
//! weight changed. All solver code is generic over [`Scalar`]; the CLI and the
//! brute-force [`oracle`] work on fixed-point `i64` values.

pub mod bench;
pub mod error;
pub mod feasibility;
pub mod interdiction;
pub mod io;
pub mod oracle;
pub mod riovspt;
pub mod scalar;
pub mod solution;
pub mod tree;

pub use error::{InstanceError, OracleError, ParseError, SolveError};
pub use feasibility::{
    build_cost_ladder, construct_riovspt_solution, is_feasible_cost, mixed_path_sums, restricted_edge_set, CostLadder,
    MixedPathSums, RestrictedEdgeSet,
};
pub use interdiction::{shortest_root_leaf, solve_mcspit, solve_mspit, InterdictionReport};
pub use riovspt::{solve_riovspt, SolveReport};
pub use scalar::Scalar;
pub use solution::{ChangedEdge, Status, WeightAssignment};
pub use tree::{
    build_instance, path_sum, root_leaf_path, EdgeAttributes, EdgeId, EdgeRecord, Instance, NodeId, PathView,
    RootedTree, WeightSelector,
};

use num_rational::Ratio;

/// Fixed-point instance; the representation used by the file format and CLI.
pub type FixedInstance = Instance<i64>;
/// Instance with exact rational weights.
pub type RationalInstance = Instance<Ratio<i64>>;
/// Wide fixed-point instance for large scales or very deep trees.
pub type WideInstance = Instance<i128>;

pub type FixedSolveReport = SolveReport<i64>;
pub type FixedInterdictionReport = InterdictionReport<i64>;
pub type FixedAssignment = WeightAssignment<i64>;
pub type FixedLadder = CostLadder<i64>;

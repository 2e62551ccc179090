use thiserror::Error;

/// Failure to assemble a valid [`Instance`](crate::Instance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("instance has no edges")]
    Empty,
    #[error("node `{child}` has more than one parent edge")]
    DuplicateChild { child: String },
    #[error("root `{root}` appears as the child of edge ({parent}, {root})")]
    RootHasParent { root: String, parent: String },
    #[error("root `{root}` is not an endpoint of any edge")]
    UnknownRoot { root: String },
    #[error("node `{node}` has no parent edge; the tree is disconnected")]
    Disconnected { node: String },
    #[error("edges through `{node}` form a cycle unreachable from the root")]
    Cycle { node: String },
    #[error("edge into `{child}`: bounds violate l <= w <= u ({detail})")]
    BoundsViolated { child: String, detail: String },
    #[error("edge into `{child}`: cost must be positive, got {cost}")]
    NonPositiveCost { child: String, cost: String },
    #[error("designated leaf `{label}` is not a leaf of the tree")]
    NotALeaf { label: String },
    #[error("unknown node `{label}`")]
    UnknownNode { label: String },
}

impl InstanceError {
    /// Child label of the edge the error refers to, when there is one.
    pub fn edge_child(&self) -> Option<&str> {
        match self {
            InstanceError::DuplicateChild { child }
            | InstanceError::BoundsViolated { child, .. }
            | InstanceError::NonPositiveCost { child, .. } => Some(child),
            InstanceError::RootHasParent { root, .. } => Some(root),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance has no designated leaf t0")]
    MissingDesignatedLeaf,
    #[error("instance has no target value D")]
    MissingTarget,
    #[error("rung {rung} is outside the cost ladder 0..={len}")]
    RungOutOfRange { rung: usize, len: usize },
    #[error("restricted edge set covers {got} edges, instance has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rung {rung} is infeasible; no solution can be constructed from it")]
    InfeasibleRung { rung: usize },
}

/// Instance document rejected by the parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem concerns the whole document.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("generator needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("generator range {name} is empty or invalid")]
    BadRange { name: &'static str },
    #[error("exhaustive search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("exhaustive upgrade search found objective {enumerated}, below the full-upgrade threshold {threshold}")]
    PartialUpgradeBeatsFull { enumerated: i64, threshold: i64 },
    #[error("exhaustive upgrade search disagrees with threshold scan on feasibility")]
    FeasibilityMismatch,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

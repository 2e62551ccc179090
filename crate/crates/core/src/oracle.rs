//! Seeded instance generation and exhaustive reference solvers.
//!
//! The exhaustive solvers enumerate integer weight vectors directly and only
//! rely on the tree model; none of the feasibility or search logic of the fast
//! solvers is reused here.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::OracleError;
use crate::interdiction::{solve_mcspit, InterdictionReport};
use crate::riovspt::{solve_riovspt, SolveReport};
use crate::solution::{Status, WeightAssignment};
use crate::tree::{build_instance, EdgeId, EdgeRecord, Instance, NodeId};

/// Default cap on search nodes visited by one exhaustive solve.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeShape {
    /// Node `i` hangs off a uniformly chosen earlier node.
    RandomAttachment,
    Path,
    Star,
    /// A spine holding half the nodes, the rest attached to random spine nodes.
    Caterpillar,
}

impl TreeShape {
    pub const ALL: [TreeShape; 4] = [
        TreeShape::RandomAttachment,
        TreeShape::Path,
        TreeShape::Star,
        TreeShape::Caterpillar,
    ];
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeShape::RandomAttachment => "random-attachment",
            TreeShape::Path => "path",
            TreeShape::Star => "star",
            TreeShape::Caterpillar => "caterpillar",
        })
    }
}

impl FromStr for TreeShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TreeShape::ALL
            .into_iter()
            .find(|shape| shape.to_string() == s)
            .ok_or_else(|| format!("unknown shape `{s}` (random-attachment, path, star, caterpillar)"))
    }
}

/// Probabilities of drawing `D` above the fully upgraded shortest path and
/// exactly at the current shortest path; the remainder lands in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeMix {
    pub infeasible: f64,
    pub zero_cost: f64,
}

impl Default for RegimeMix {
    fn default() -> Self {
        RegimeMix {
            infeasible: 0.1,
            zero_cost: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub node_count: usize,
    pub seed: u64,
    /// Range for `w`; `l` and `u` are clamped into it as well.
    pub weight_range: RangeInclusive<i64>,
    /// Range of the offsets `w - l` and `u - w` before clamping.
    pub slack_range: RangeInclusive<i64>,
    pub cost_range: RangeInclusive<i64>,
    pub shape: TreeShape,
    pub regimes: RegimeMix,
}

impl GeneratorConfig {
    pub fn new(node_count: usize, seed: u64) -> Self {
        GeneratorConfig {
            node_count,
            seed,
            weight_range: 0..=10,
            slack_range: 0..=10,
            cost_range: 1..=10,
            shape: TreeShape::RandomAttachment,
            regimes: RegimeMix::default(),
        }
    }

    pub fn with_shape(mut self, shape: TreeShape) -> Self {
        self.shape = shape;
        self
    }
}

fn min_leaf_length(instance: &Instance<i64>, value: impl Fn(EdgeId) -> i64) -> i64 {
    let tree = instance.tree();
    let lengths = tree.prefix_sums(value);
    tree.leaves()
        .iter()
        .map(|v| lengths[v.index()])
        .min()
        .expect("tree has a leaf")
}

/// Builds a random instance; identical configs give identical instances.
pub fn generate_instance(config: &GeneratorConfig) -> Result<Instance<i64>, OracleError> {
    let n = config.node_count;
    if n < 2 {
        return Err(OracleError::TooFewNodes(n));
    }
    let weights = &config.weight_range;
    if weights.is_empty() {
        return Err(OracleError::BadRange { name: "weight_range" });
    }
    if config.slack_range.is_empty() || *config.slack_range.start() < 0 {
        return Err(OracleError::BadRange { name: "slack_range" });
    }
    if config.cost_range.is_empty() || *config.cost_range.start() < 1 {
        return Err(OracleError::BadRange { name: "cost_range" });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let spine = n.div_ceil(2);
    let mut records = Vec::with_capacity(n - 1);
    for child in 2..=n {
        let parent = match config.shape {
            TreeShape::RandomAttachment => rng.gen_range(1..child),
            TreeShape::Path => child - 1,
            TreeShape::Star => 1,
            TreeShape::Caterpillar if child <= spine => child - 1,
            TreeShape::Caterpillar => rng.gen_range(1..=spine),
        };
        let w = rng.gen_range(weights.clone());
        let l = (w - rng.gen_range(config.slack_range.clone())).max(*weights.start());
        let u = (w + rng.gen_range(config.slack_range.clone())).min(*weights.end());
        let c = rng.gen_range(config.cost_range.clone());
        records.push(EdgeRecord::new(format!("v{parent}"), format!("v{child}"), w, l, u, c));
    }

    let plain = build_instance(&records, "v1", None, None)?;
    let leaves = plain.tree().leaves();
    let t0 = leaves[rng.gen_range(0..leaves.len())];
    let t0_label = plain.tree().label(t0).to_string();

    let current = min_leaf_length(&plain, |e| plain.attr(e).w);
    let upgraded = min_leaf_length(&plain, |e| plain.attr(e).u);
    let draw: f64 = rng.gen();
    let target = if draw < config.regimes.infeasible {
        upgraded + rng.gen_range(1..=3)
    } else if draw < config.regimes.infeasible + config.regimes.zero_cost {
        current
    } else {
        rng.gen_range(current..=upgraded)
    };

    Ok(plain.with_target(Some(target)).with_t0(Some(&t0_label))?)
}

/// Depth-first enumeration of integer weight vectors with changes confined to
/// an allowed edge set.
struct VectorSearch<'a> {
    instance: &'a Instance<i64>,
    target: i64,
    /// Edges in depth-first preorder, so a parent edge is fixed before its children.
    preorder: Vec<EdgeId>,
    range: Vec<(i64, i64)>,
    /// Least over leaves below a node of the largest reachable remaining length.
    reach_below: Vec<i64>,
    /// For nodes on the designated path: (min, max) remaining length to t0.
    designated_below: Vec<Option<(i64, i64)>>,
    lengths: Vec<i64>,
    values: Vec<i64>,
    visited: u64,
    budget: u64,
}

impl<'a> VectorSearch<'a> {
    fn new(
        instance: &'a Instance<i64>,
        target: i64,
        designated: Option<NodeId>,
        range: Vec<(i64, i64)>,
        visited: u64,
        budget: u64,
    ) -> Self {
        let tree = instance.tree();
        let n = tree.node_count();

        let mut preorder = Vec::with_capacity(n - 1);
        let mut stack = vec![tree.root()];
        while let Some(node) = stack.pop() {
            if let Some(e) = node.parent_edge() {
                preorder.push(e);
            }
            stack.extend(tree.children(node).iter().rev());
        }

        let mut reach_below = vec![0i64; n];
        for &node in tree.top_down().iter().rev() {
            let kids = tree.children(node);
            if !kids.is_empty() {
                reach_below[node.index()] = kids
                    .iter()
                    .map(|&k| range[k.parent_edge().unwrap().index()].1 + reach_below[k.index()])
                    .min()
                    .unwrap();
            }
        }

        let mut designated_below = vec![None; n];
        if let Some(t0) = designated {
            let (mut lo, mut hi) = (0, 0);
            let mut node = t0;
            designated_below[node.index()] = Some((0, 0));
            while let Some(e) = node.parent_edge() {
                lo += range[e.index()].0;
                hi += range[e.index()].1;
                node = tree.parent(node).unwrap();
                designated_below[node.index()] = Some((lo, hi));
            }
        }

        VectorSearch {
            instance,
            target,
            preorder,
            range,
            reach_below,
            designated_below,
            lengths: vec![0; n],
            values: instance.weights(),
            visited,
            budget,
        }
    }

    fn run(&mut self) -> Result<Option<Vec<i64>>, OracleError> {
        if self.descend(0)? {
            Ok(Some(self.values.clone()))
        } else {
            Ok(None)
        }
    }

    fn descend(&mut self, pos: usize) -> Result<bool, OracleError> {
        if pos == self.preorder.len() {
            return Ok(true);
        }
        let edge = self.preorder[pos];
        let child = edge.child();
        let parent = self.instance.tree().edge_parent(edge);
        let (lo, hi) = self.range[edge.index()];
        for value in lo..=hi {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(OracleError::BudgetExceeded { budget: self.budget });
            }
            let length = self.lengths[parent.index()] + value;
            if length + self.reach_below[child.index()] < self.target {
                continue;
            }
            if let Some((rest_lo, rest_hi)) = self.designated_below[child.index()] {
                if length + rest_lo > self.target || length + rest_hi < self.target {
                    continue;
                }
            }
            self.lengths[child.index()] = length;
            self.values[edge.index()] = value;
            if self.descend(pos + 1)? {
                return Ok(true);
            }
        }
        self.values[edge.index()] = self.instance.attr(edge).w;
        Ok(false)
    }
}

/// `0` followed by the distinct edge costs, ascending.
fn thresholds(instance: &Instance<i64>) -> Vec<i64> {
    let mut costs = instance.costs();
    costs.push(0);
    costs.sort_unstable();
    costs.dedup();
    costs
}

fn bottleneck(instance: &Instance<i64>, weights: &[i64]) -> i64 {
    instance
        .attrs()
        .iter()
        .zip(weights)
        .filter(|(a, &x)| a.w != x)
        .map(|(a, _)| a.c)
        .max()
        .unwrap_or(0)
}

fn status_for(objective: i64) -> Status {
    if objective == 0 {
        Status::AlreadyOptimal
    } else {
        Status::Solved
    }
}

/// Exhaustive solver for the restricted inverse optimal value problem.
///
/// For each threshold in ascending order, enumerates every integer vector in
/// `prod [l(e), u(e)]` that keeps `w` on edges costlier than the threshold,
/// and stops at the first one with `P0 = D` and all root-leaf paths `>= D`.
pub fn brute_force_riovspt(instance: &Instance<i64>, budget: u64) -> Result<SolveReport<i64>, OracleError> {
    let target = instance.require_target()?;
    let t0 = instance.designated_leaf()?;
    let mut visited = 0;
    for threshold in thresholds(instance) {
        let range = instance
            .attrs()
            .iter()
            .map(|a| if a.c <= threshold { (a.l, a.u) } else { (a.w, a.w) })
            .collect();
        let mut search = VectorSearch::new(instance, target, Some(t0), range, visited, budget);
        let found = search.run()?;
        visited = search.visited;
        if let Some(weights) = found {
            let objective = bottleneck(instance, &weights);
            let assignment = WeightAssignment::new(instance, weights);
            return Ok(SolveReport {
                status: status_for(objective),
                objective: Some(objective),
                rung: None,
                changed_edges: assignment.changed_edges(instance),
                assignment: Some(assignment),
                iterations: visited,
            });
        }
    }
    Ok(SolveReport {
        status: Status::Infeasible,
        objective: None,
        rung: None,
        assignment: None,
        changed_edges: Vec::new(),
        iterations: visited,
    })
}

/// Exhaustive solver for minimum-cost interdiction.
///
/// Scans thresholds, upgrading every edge at or below the threshold to `u`,
/// and returns the first that lifts every root-leaf path to `D`. The answer is
/// then checked against a full enumeration of integer vectors in
/// `prod [w(e), u(e)]`, which would expose any partial upgrade beating the
/// all-the-way-to-`u` reduction.
pub fn brute_force_mcspit(instance: &Instance<i64>, budget: u64) -> Result<InterdictionReport<i64>, OracleError> {
    let target = instance.require_target()?;
    let levels = thresholds(instance);

    let mut by_threshold = None;
    for &threshold in &levels {
        let weights: Vec<i64> = instance
            .attrs()
            .iter()
            .map(|a| if a.c <= threshold { a.u } else { a.w })
            .collect();
        let shortest = min_leaf_length(instance, |e| weights[e.index()]);
        if shortest >= target {
            by_threshold = Some((threshold, weights, shortest));
            break;
        }
    }

    let mut visited = 0;
    let mut by_enumeration = None;
    for &threshold in &levels {
        let range = instance
            .attrs()
            .iter()
            .map(|a| if a.c <= threshold { (a.w, a.u) } else { (a.w, a.w) })
            .collect();
        let mut search = VectorSearch::new(instance, target, None, range, visited, budget);
        let found = search.run()?;
        visited = search.visited;
        if let Some(weights) = found {
            by_enumeration = Some(bottleneck(instance, &weights));
            break;
        }
    }

    match (by_threshold, by_enumeration) {
        (None, None) => Ok(InterdictionReport {
            status: Status::Infeasible,
            objective: None,
            rung: None,
            assignment: None,
            achieved_shortest: None,
            iterations: visited,
        }),
        (Some((threshold, weights, shortest)), Some(enumerated)) => {
            if enumerated < threshold {
                return Err(OracleError::PartialUpgradeBeatsFull { enumerated, threshold });
            }
            if enumerated > threshold {
                return Err(OracleError::FeasibilityMismatch);
            }
            Ok(InterdictionReport {
                status: status_for(threshold),
                objective: Some(threshold),
                rung: None,
                assignment: Some(WeightAssignment::new(instance, weights)),
                achieved_shortest: Some(shortest),
                iterations: visited,
            })
        }
        _ => Err(OracleError::FeasibilityMismatch),
    }
}

/// Outcome of comparing both fast solvers with their exhaustive references
/// on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub riovspt: (Status, Option<i64>),
    pub riovspt_oracle: (Status, Option<i64>),
    pub mcspit: (Status, Option<i64>),
    pub mcspit_oracle: (Status, Option<i64>),
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.riovspt == self.riovspt_oracle && self.mcspit == self.mcspit_oracle
    }
}

pub fn compare_with_oracles(instance: &Instance<i64>, budget: u64) -> Result<Comparison, OracleError> {
    let fast = solve_riovspt(instance)?;
    let slow = brute_force_riovspt(instance, budget)?;
    let fast_m = solve_mcspit(instance)?;
    let slow_m = brute_force_mcspit(instance, budget)?;
    Ok(Comparison {
        riovspt: (fast.status, fast.objective),
        riovspt_oracle: (slow.status, slow.objective),
        mcspit: (fast_m.status, fast_m.objective),
        mcspit_oracle: (slow_m.status, slow_m.objective),
    })
}

/// Generator configuration for the `i`-th instance of a seeded verification
/// run: node count in `[2, max_n]`, shape cycling through [`TreeShape::ALL`].
pub fn verification_config(seed: u64, index: u64, max_n: usize) -> GeneratorConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let n = rng.gen_range(2..=max_n.max(2));
    let shape = TreeShape::ALL[(index % 4) as usize];
    GeneratorConfig::new(n, rng.gen()).with_shape(shape)
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub index: u64,
    pub instance: Instance<i64>,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifySummary {
    pub checked: u64,
    pub agreed: u64,
    pub first_failure: Option<Counterexample>,
}

/// Runs [`compare_with_oracles`] on `count` seeded instances, stopping at the
/// first disagreement or oracle error.
pub fn verify_random(count: u64, max_n: usize, seed: u64, budget: u64) -> Result<VerifySummary, OracleError> {
    let mut summary = VerifySummary::default();
    for index in 0..count {
        let instance = generate_instance(&verification_config(seed, index, max_n))?;
        summary.checked += 1;
        let reason = match compare_with_oracles(&instance, budget) {
            Ok(cmp) if cmp.agrees() => {
                summary.agreed += 1;
                continue;
            }
            Ok(cmp) => format!("{cmp:?}"),
            Err(err) => err.to_string(),
        };
        summary.first_failure = Some(Counterexample {
            index,
            instance,
            reason,
        });
        break;
    }
    Ok(summary)
}

//! Rooted-tree instances: structure, per-edge attributes and root-leaf paths.
//!
//! Every non-root node owns exactly one edge (the one to its parent), so an
//! edge is identified by its child. Non-root nodes are numbered `1..n` in
//! natural label order (`v2 < v10`), the root is node `0`, and edge `i` is the
//! edge into node `i + 1`. That numbering is the canonical edge order used by
//! every weight vector in the crate.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{InstanceError, SolveError};
use crate::scalar::{sum, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0
    }

    /// Edge from this node to its parent; `None` for the root.
    pub fn parent_edge(self) -> Option<EdgeId> {
        self.0.checked_sub(1).map(EdgeId)
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn child(self) -> NodeId {
        NodeId(self.0 + 1)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Compares labels treating runs of ASCII digits as numbers, so `v9 < v10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].is_ascii_digit() && b[j].is_ascii_digit() {
            let si = i;
            let sj = j;
            while i < a.len() && a[i].is_ascii_digit() {
                i += 1;
            }
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let da = trim_zeros(&a[si..i]);
            let db = trim_zeros(&b[sj..j]);
            let ord = da
                .len()
                .cmp(&db.len())
                .then_with(|| da.cmp(db))
                .then_with(|| (i - si).cmp(&(j - sj)));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            match a[i].cmp(&b[j]) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                ord => return ord,
            }
        }
    }
    (a.len() - i).cmp(&(b.len() - j))
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let start = digits.iter().position(|&d| d != b'0').unwrap_or(digits.len());
    &digits[start..]
}

/// Immutable rooted tree with parent pointers and a cached top-down order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    labels: Vec<String>,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    order: Vec<NodeId>,
    leaves: Vec<NodeId>,
    lookup: HashMap<String, NodeId>,
}

impl RootedTree {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn parent(&self, node: NodeId) -> Option<NodeId> {
        self.parent[node.0]
    }

    pub fn edge_parent(&self, edge: EdgeId) -> NodeId {
        self.parent[edge.child().0].expect("non-root node has a parent")
    }

    pub fn children(&self, node: NodeId) -> &[NodeId] {
        &self.children[node.0]
    }

    /// Leaves in canonical (ascending id) order.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn is_leaf(&self, node: NodeId) -> bool {
        node.0 != 0 && self.children[node.0].is_empty()
    }

    /// Nodes ordered so that every parent precedes its children.
    pub fn top_down(&self) -> &[NodeId] {
        &self.order
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node.0]
    }

    pub fn edge_label(&self, edge: EdgeId) -> &str {
        self.label(edge.child())
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.lookup.get(label).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    /// Edges from the root down to `node`, in that order.
    pub fn path_edges(&self, node: NodeId) -> Vec<EdgeId> {
        let mut edges = Vec::new();
        let mut cur = node;
        while let Some(edge) = cur.parent_edge() {
            edges.push(edge);
            cur = self.parent[cur.0].expect("non-root node has a parent");
        }
        edges.reverse();
        edges
    }

    /// For every node, the sum of `value(e)` over the edges of its root path.
    pub fn prefix_sums<T: Scalar>(&self, mut value: impl FnMut(EdgeId) -> T) -> Vec<T> {
        let mut sums = vec![T::zero(); self.node_count()];
        for &node in &self.order[1..] {
            let parent = self.parent[node.0].expect("non-root node has a parent");
            let edge = node.parent_edge().expect("non-root node has an edge");
            sums[node.0] = sums[parent.0] + value(edge);
        }
        sums
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeAttributes<T> {
    /// Current weight.
    pub w: T,
    /// Lowest admissible adjusted weight.
    pub l: T,
    /// Highest admissible adjusted weight.
    pub u: T,
    /// Cost charged once when the weight changes.
    pub c: T,
}

impl<T: Scalar> EdgeAttributes<T> {
    pub fn get(&self, selector: WeightSelector) -> T {
        match selector {
            WeightSelector::Weight => self.w,
            WeightSelector::Lower => self.l,
            WeightSelector::Upper => self.u,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightSelector {
    Weight,
    Lower,
    Upper,
}

/// One `(parent, child, w, l, u, c)` edge description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord<T> {
    pub parent: String,
    pub child: String,
    pub w: T,
    pub l: T,
    pub u: T,
    pub c: T,
}

impl<T> EdgeRecord<T> {
    pub fn new(parent: impl Into<String>, child: impl Into<String>, w: T, l: T, u: T, c: T) -> Self {
        EdgeRecord {
            parent: parent.into(),
            child: child.into(),
            w,
            l,
            u,
            c,
        }
    }
}

/// A validated problem input: tree, per-edge attributes, optional designated
/// leaf `t0` and optional target value `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<T> {
    tree: RootedTree,
    attrs: Vec<EdgeAttributes<T>>,
    t0: Option<NodeId>,
    target: Option<T>,
}

impl<T: Scalar> Instance<T> {
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn attrs(&self) -> &[EdgeAttributes<T>] {
        &self.attrs
    }

    pub fn attr(&self, edge: EdgeId) -> &EdgeAttributes<T> {
        &self.attrs[edge.0]
    }

    pub fn edge_count(&self) -> usize {
        self.attrs.len()
    }

    pub fn t0(&self) -> Option<NodeId> {
        self.t0
    }

    pub fn target(&self) -> Option<T> {
        self.target
    }

    pub fn designated_leaf(&self) -> Result<NodeId, SolveError> {
        self.t0.ok_or(SolveError::MissingDesignatedLeaf)
    }

    pub fn require_target(&self) -> Result<T, SolveError> {
        self.target.ok_or(SolveError::MissingTarget)
    }

    /// The selected per-edge vector in canonical edge order.
    pub fn values(&self, selector: WeightSelector) -> Vec<T> {
        self.attrs.iter().map(|a| a.get(selector)).collect()
    }

    pub fn weights(&self) -> Vec<T> {
        self.values(WeightSelector::Weight)
    }

    pub fn costs(&self) -> Vec<T> {
        self.attrs.iter().map(|a| a.c).collect()
    }

    pub fn with_target(mut self, target: Option<T>) -> Self {
        self.target = target;
        self
    }

    pub fn with_t0(mut self, label: Option<&str>) -> Result<Self, InstanceError> {
        self.t0 = match label {
            Some(label) => Some(resolve_leaf(&self.tree, label)?),
            None => None,
        };
        Ok(self)
    }

    /// Edge records in canonical order; feeding them back into
    /// [`build_instance`] reproduces this instance.
    pub fn edge_records(&self) -> Vec<EdgeRecord<T>> {
        self.tree
            .edges()
            .map(|e| {
                let a = self.attrs[e.0];
                EdgeRecord::new(
                    self.tree.label(self.tree.edge_parent(e)),
                    self.tree.edge_label(e),
                    a.w,
                    a.l,
                    a.u,
                    a.c,
                )
            })
            .collect()
    }

    /// Converts every scalar with `f`. `f` must be strictly increasing so that
    /// bounds, positivity and the cost order are preserved.
    pub fn map_scalar<U: Scalar>(&self, mut f: impl FnMut(T) -> U) -> Instance<U> {
        Instance {
            tree: self.tree.clone(),
            attrs: self
                .attrs
                .iter()
                .map(|a| EdgeAttributes {
                    w: f(a.w),
                    l: f(a.l),
                    u: f(a.u),
                    c: f(a.c),
                })
                .collect(),
            t0: self.t0,
            target: self.target.map(f),
        }
    }
}

fn resolve_leaf(tree: &RootedTree, label: &str) -> Result<NodeId, InstanceError> {
    let node = tree.node(label).ok_or_else(|| InstanceError::UnknownNode {
        label: label.to_string(),
    })?;
    if !tree.is_leaf(node) {
        return Err(InstanceError::NotALeaf {
            label: label.to_string(),
        });
    }
    Ok(node)
}

/// Validates `records` and assembles an [`Instance`].
pub fn build_instance<T: Scalar>(
    records: &[EdgeRecord<T>],
    root: &str,
    t0: Option<&str>,
    target: Option<T>,
) -> Result<Instance<T>, InstanceError> {
    if records.is_empty() {
        return Err(InstanceError::Empty);
    }

    let mut by_child: HashMap<&str, usize> = HashMap::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        if rec.child == root {
            return Err(InstanceError::RootHasParent {
                root: root.to_string(),
                parent: rec.parent.clone(),
            });
        }
        if by_child.insert(rec.child.as_str(), i).is_some() {
            return Err(InstanceError::DuplicateChild {
                child: rec.child.clone(),
            });
        }
    }
    if !records.iter().any(|r| r.parent == root) {
        return Err(InstanceError::UnknownRoot { root: root.to_string() });
    }
    if let Some(rec) = records
        .iter()
        .find(|r| r.parent != root && !by_child.contains_key(r.parent.as_str()))
    {
        return Err(InstanceError::Disconnected {
            node: rec.parent.clone(),
        });
    }

    let mut sorted: Vec<usize> = (0..records.len()).collect();
    sorted.sort_by(|&a, &b| natural_cmp(&records[a].child, &records[b].child));

    let n = records.len() + 1;
    let mut labels = Vec::with_capacity(n);
    labels.push(root.to_string());
    labels.extend(sorted.iter().map(|&i| records[i].child.clone()));
    let lookup: HashMap<String, NodeId> = labels.iter().enumerate().map(|(i, l)| (l.clone(), NodeId(i))).collect();

    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut attrs = Vec::with_capacity(records.len());
    for (pos, &i) in sorted.iter().enumerate() {
        let rec = &records[i];
        let child = NodeId(pos + 1);
        let p = lookup[rec.parent.as_str()];
        parent[child.0] = Some(p);
        children[p.0].push(child);
        attrs.push(validate_attrs(rec)?);
    }
    for list in &mut children {
        list.sort_unstable();
    }

    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([NodeId::ROOT]);
    while let Some(node) = queue.pop_front() {
        order.push(node);
        queue.extend(children[node.0].iter().copied());
    }
    if order.len() != n {
        let mut seen = vec![false; n];
        for node in &order {
            seen[node.0] = true;
        }
        let stray = seen.iter().position(|s| !s).expect("some node unreached");
        return Err(InstanceError::Cycle {
            node: labels[stray].clone(),
        });
    }

    let leaves = (1..n).map(NodeId).filter(|v| children[v.0].is_empty()).collect();

    let tree = RootedTree {
        labels,
        parent,
        children,
        order,
        leaves,
        lookup,
    };
    let t0 = t0.map(|label| resolve_leaf(&tree, label)).transpose()?;
    Ok(Instance {
        tree,
        attrs,
        t0,
        target,
    })
}

fn validate_attrs<T: Scalar>(rec: &EdgeRecord<T>) -> Result<EdgeAttributes<T>, InstanceError> {
    if rec.l > rec.w || rec.w > rec.u {
        return Err(InstanceError::BoundsViolated {
            child: rec.child.clone(),
            detail: format!("l={}, w={}, u={}", rec.l, rec.w, rec.u),
        });
    }
    if rec.c <= T::zero() {
        return Err(InstanceError::NonPositiveCost {
            child: rec.child.clone(),
            cost: rec.c.to_string(),
        });
    }
    Ok(EdgeAttributes {
        w: rec.w,
        l: rec.l,
        u: rec.u,
        c: rec.c,
    })
}

/// The root-to-leaf edge sequence of one leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathView {
    leaf: NodeId,
    edges: Vec<EdgeId>,
}

impl PathView {
    pub fn leaf(&self) -> NodeId {
        self.leaf
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The path consisting only of the root; its sums are zero.
    pub fn empty() -> Self {
        PathView {
            leaf: NodeId::ROOT,
            edges: Vec::new(),
        }
    }
}

pub fn root_leaf_path<T: Scalar>(instance: &Instance<T>, leaf: NodeId) -> Result<PathView, InstanceError> {
    let tree = instance.tree();
    if leaf.0 >= tree.node_count() || !tree.is_leaf(leaf) {
        let label = tree.labels.get(leaf.0).cloned().unwrap_or_else(|| leaf.to_string());
        return Err(InstanceError::NotALeaf { label });
    }
    Ok(PathView {
        leaf,
        edges: tree.path_edges(leaf),
    })
}

pub fn path_sum<T: Scalar>(instance: &Instance<T>, path: &PathView, selector: WeightSelector) -> T {
    sum(path.edges.iter().map(|&e| instance.attr(e).get(selector)))
}

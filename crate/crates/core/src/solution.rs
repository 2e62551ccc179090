use serde::Serialize;

use crate::scalar::Scalar;
use crate::tree::{EdgeId, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A strictly positive objective was required.
    Solved,
    /// No assignment satisfies the constraints.
    Infeasible,
    /// The current weights already satisfy the constraints.
    AlreadyOptimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChangedEdge<T> {
    pub edge: EdgeId,
    pub old: T,
    pub new: T,
}

/// A full edge-weight vector together with the edges where it departs from
/// the instance's current weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment<T> {
    weights: Vec<T>,
    changed: Vec<EdgeId>,
}

impl<T: Scalar> WeightAssignment<T> {
    pub fn new(instance: &Instance<T>, weights: Vec<T>) -> Self {
        assert_eq!(weights.len(), instance.edge_count(), "one weight per edge");
        let changed = instance
            .attrs()
            .iter()
            .zip(&weights)
            .enumerate()
            .filter(|(_, (a, &x))| a.w != x)
            .map(|(i, _)| EdgeId(i))
            .collect();
        WeightAssignment { weights, changed }
    }

    /// The instance's own weights; nothing changed.
    pub fn unchanged(instance: &Instance<T>) -> Self {
        WeightAssignment {
            weights: instance.weights(),
            changed: Vec::new(),
        }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn get(&self, edge: EdgeId) -> T {
        self.weights[edge.0]
    }

    /// Edges whose weight differs from the original, ascending.
    pub fn changed(&self) -> &[EdgeId] {
        &self.changed
    }

    pub fn changed_edges(&self, instance: &Instance<T>) -> Vec<ChangedEdge<T>> {
        self.changed
            .iter()
            .map(|&edge| ChangedEdge {
                edge,
                old: instance.attr(edge).w,
                new: self.weights[edge.0],
            })
            .collect()
    }

    /// Bottleneck Hamming objective: the largest cost among changed edges,
    /// zero when nothing changed.
    pub fn bottleneck_cost(&self, instance: &Instance<T>) -> T {
        self.changed
            .iter()
            .map(|&e| instance.attr(e).c)
            .max()
            .unwrap_or_else(T::zero)
    }

    pub fn into_weights(self) -> Vec<T> {
        self.weights
    }
}

#![allow(dead_code)]

use treeinv::io::parse_instance;
use treeinv::{FixedInstance, NodeId};

pub const EXAMPLE1: &str = include_str!("../data/example1.instance");

pub fn example1() -> FixedInstance {
    parse_instance(EXAMPLE1).expect("fixture parses").instance
}

pub fn node(instance: &FixedInstance, label: &str) -> NodeId {
    instance.tree().node(label).unwrap_or_else(|| panic!("no node {label}"))
}

/// Child labels of the edges in `edges`, e.g. `["e2", "e3"]` style ids.
pub fn edge_names(instance: &FixedInstance, edges: impl IntoIterator<Item = treeinv::EdgeId>) -> Vec<String> {
    edges
        .into_iter()
        .map(|e| format!("e{}", &instance.tree().edge_label(e)[1..]))
        .collect()
}

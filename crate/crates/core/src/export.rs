//! DOT and JSON exporters for the computed lattices. Output is fully
//! deterministic: nodes in the input order (callers pass sorted lists),
//! Hasse edges only, edges sorted.

use serde_json::json;

use crate::galois;
use crate::group::Subgroup;
use crate::ideal::{classify_ideal, Ideal};
use crate::indicator::Indicator;
use crate::invariant::min_height_indicator;

/// Cover relations of a finite poset given by a containment test:
/// `a -> b` when a < b with nothing strictly between.
pub fn hasse_edges<T>(items: &[T], lt: impl Fn(&T, &T) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, a) in items.iter().enumerate() {
        for (j, b) in items.iter().enumerate() {
            if i == j || !lt(a, b) {
                continue;
            }
            let covered = items
                .iter()
                .enumerate()
                .any(|(k, c)| k != i && k != j && lt(a, c) && lt(c, b));
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn dot_digraph(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", label.replace('"', "\\\"")));
    }
    for &(a, b) in edges {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of fully invariant subgroups, labelled by canonical
/// indicator and order.
pub fn subgroup_lattice_dot(subgroups: &[Subgroup]) -> String {
    let labels: Vec<String> = subgroups
        .iter()
        .map(|h| format!("{} | {}", min_height_indicator(h), h.order()))
        .collect();
    let edges = hasse_edges(subgroups, |a, b| a != b && a.is_subgroup_of(b));
    dot_digraph("fully_invariant_subgroups", &labels, &edges)
}

/// Hasse diagram of an ideal list, labelled `(σ | r-profile | size)`.
pub fn ideal_lattice_dot(ideals: &[Ideal]) -> String {
    let labels: Vec<String> = ideals
        .iter()
        .map(|i| format!("({} | {})", classify_ideal(i), i.size()))
        .collect();
    let edges = hasse_edges(ideals, |a, b| a != b && a.is_subset_of(b));
    dot_digraph("ideal_lattice", &labels, &edges)
}

/// Hasse diagram of a set of indicators under the pointwise order.
pub fn indicator_lattice_dot(indicators: &[Indicator]) -> String {
    let labels: Vec<String> = indicators.iter().map(|s| s.to_string()).collect();
    let edges = hasse_edges(indicators, |a, b| a != b && a.precedes(b));
    dot_digraph("indicator_lattice", &labels, &edges)
}

/// Full ideal lattice as JSON: classification labels, sizes, generating
/// sets, class data and the Hasse edges of inclusion.
pub fn ideal_lattice_json(ideals: &[Ideal]) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = ideals
        .iter()
        .enumerate()
        .map(|(i, ideal)| {
            let label = classify_ideal(ideal);
            json!({
                "index": i,
                "indicator": label.indicator.to_string(),
                "rank_profile": label.rank_profile,
                "size": ideal.size(),
                "generators": ideal
                    .generators()
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>(),
                "class_label": galois::class_label(ideal).to_string(),
                "im_closed": galois::is_closed_ideal(ideal),
            })
        })
        .collect();
    let edges: Vec<Vec<usize>> = hasse_edges(ideals, |a, b| a != b && a.is_subset_of(b))
        .into_iter()
        .map(|(a, b)| vec![a, b])
        .collect();
    json!({
        "schema": "pgroup-lab/ideal-lattice-v1",
        "group": {
            "name": ideals.first().map(|i| i.ring().group().name()).unwrap_or_default(),
        },
        "ideals": nodes,
        "covers": edges,
    })
}

//! Attraction graph checks, the ordering of components by moment-map
//! value, DOT export and the comparison constant between two contracting
//! torus directions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use petgraph::algo::{connected_components, is_cyclic_directed, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::{morse_bott_index, total_rank, GradedRanks};
use crate::manifold::{validate, Finding, ManifoldData};
use crate::numerics::{fmt_rational, int, Rational};

/// Directed graph on component names, one edge per attraction edge.
pub fn attraction_graph(m: &ManifoldData) -> Result<(DiGraph<String, i64>, BTreeMap<String, NodeIndex>)> {
    let mut g = DiGraph::new();
    let mut ix = BTreeMap::new();
    for c in &m.components {
        ix.insert(c.name.clone(), g.add_node(c.name.clone()));
    }
    for e in &m.edges {
        let (Some(&a), Some(&b)) = (ix.get(&e.from), ix.get(&e.to)) else {
            return Err(Error::InvalidInput(format!(
                "edge {} -> {} names a missing component",
                e.from, e.to
            )));
        };
        g.add_edge(a, b, e.weight);
    }
    Ok((g, ix))
}

/// Components without outgoing edges.
pub fn leaves(m: &ManifoldData) -> Vec<String> {
    let sources: BTreeSet<&str> = m.edges.iter().map(|e| e.from.as_str()).collect();
    m.components
        .iter()
        .filter(|c| !sources.contains(c.name.as_str()))
        .map(|c| c.name.clone())
        .collect()
}

/// Signed labels at each vertex: `-k` per incoming edge, `+k` per outgoing
/// edge and `+m` per torsion arrow.
fn vertex_labels(m: &ManifoldData) -> BTreeMap<&str, Vec<i64>> {
    let mut out: BTreeMap<&str, Vec<i64>> =
        m.components.iter().map(|c| (c.name.as_str(), Vec::new())).collect();
    for e in &m.edges {
        for _ in 0..e.multiplicity {
            if let Some(v) = out.get_mut(e.from.as_str()) {
                v.push(e.weight);
            }
            if let Some(v) = out.get_mut(e.to.as_str()) {
                v.push(-e.weight);
            }
        }
    }
    for t in &m.torsion_arrows {
        if let Some(v) = out.get_mut(t.at.as_str()) {
            v.push(t.weight);
        }
    }
    out
}

pub fn validate_graph(m: &ManifoldData) -> Vec<Finding> {
    let mut out: Vec<Finding> = validate(m)
        .findings
        .into_iter()
        .filter(|f| f.rule.starts_with("edge_") || f.rule == "torsion_arrow")
        .collect();
    let (g, _) = match attraction_graph(m) {
        Ok(x) => x,
        Err(e) => {
            out.push(Finding::new("graph", false, e.to_string()));
            return out;
        }
    };
    out.push(Finding::new(
        "acyclic",
        !is_cyclic_directed(&g),
        format!("{} vertices, {} edges", g.node_count(), g.edge_count()),
    ));
    let parts = connected_components(&g);
    out.push(Finding::new(
        "connected",
        parts == 1,
        format!("{parts} weakly connected pieces"),
    ));
    if let Some(min) = m.minimal_component() {
        let bad: Vec<&str> = m
            .edges
            .iter()
            .filter(|e| e.to == min.name)
            .map(|e| e.from.as_str())
            .collect();
        out.push(Finding::new(
            "minimum_is_source",
            bad.is_empty(),
            format!("edges into {}: {bad:?}", min.name),
        ));
    }

    let leaf_set: BTreeSet<String> = leaves(m).into_iter().collect();
    for t in &m.torsion_arrows {
        out.push(Finding::new(
            "arrow_at_leaf",
            leaf_set.contains(&t.at),
            format!("arrow {} at {}", t.weight, t.at),
        ));
    }

    if let Some(s) = m.csr_weight {
        let s = i64::from(s);
        for leaf in &leaf_set {
            let Some(c) = m.component(leaf) else { continue };
            let Some(&top) = c.weights.keys().filter(|&&k| k > 0).max() else {
                continue;
            };
            if top < 2 {
                continue;
            }
            let has = m.torsion_arrows.iter().any(|t| &t.at == leaf && t.weight == top);
            out.push(Finding::new(
                "leaf_arrow",
                has && c.m_minimal(top),
                format!("leaf {leaf} with largest weight {top}"),
            ));
        }
        let labels = vertex_labels(m);
        if labels.values().all(|v| v.len() <= 2) {
            for (name, v) in &labels {
                if v.len() == 2 {
                    let sum: i64 = v.iter().sum();
                    out.push(Finding::new(
                        "chain_sum",
                        sum == s,
                        format!("{name}: labels {v:?} sum to {sum}, expected {s}"),
                    ));
                }
            }
        }
    }
    out
}

/// Components grouped by equal moment-map value, in increasing order.
pub fn ab_order(m: &ManifoldData) -> Vec<(Rational, Vec<String>)> {
    let mut groups: BTreeMap<Rational, Vec<String>> = BTreeMap::new();
    for c in &m.components {
        groups.entry(c.h_value.clone()).or_default().push(c.name.clone());
    }
    groups.into_iter().collect()
}

/// Graded ranks of the ideals spanned by groups at or above each cut,
/// starting with everything and ending with zero.
pub fn ab_ideal_ranks(m: &ManifoldData) -> Vec<GradedRanks> {
    let groups = ab_order(m);
    let mut out = Vec::new();
    for i in 0..=groups.len() {
        let names: BTreeSet<&String> = groups[i..].iter().flat_map(|(_, v)| v).collect();
        let mut r = GradedRanks::new();
        for c in m.components.iter().filter(|c| names.contains(&c.name)) {
            let mu = morse_bott_index(c);
            for (j, &b) in c.betti.iter().enumerate() {
                if b > 0 {
                    *r.entry(mu + 2 * j as i64).or_insert(0) += b;
                }
            }
        }
        out.push(r);
    }
    out
}

pub fn ab_total_ranks(m: &ManifoldData) -> Vec<u64> {
    ab_ideal_ranks(m).iter().map(total_rank).collect()
}

/// Topological order of the components, ties broken by input order.
pub fn topological_order(m: &ManifoldData) -> Result<Vec<String>> {
    let (g, _) = attraction_graph(m)?;
    toposort(&g, None)
        .map(|v| v.into_iter().map(|n| g[n].clone()).collect())
        .map_err(|c| Error::Inconsistent(format!("attraction graph has a cycle through {}", g[c.node_id()])))
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering with nodes and edges in sorted order.
pub fn to_dot(m: &ManifoldData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_id(&m.name));
    let _ = writeln!(out, "  rankdir=BT;");
    let mut nodes: Vec<&str> = m.components.iter().map(|c| c.name.as_str()).collect();
    nodes.sort_unstable();
    for n in nodes {
        let c = m.component(n).unwrap();
        let _ = writeln!(
            out,
            "  {} [label={}];",
            dot_id(n),
            dot_id(&format!("{} (H={})", n, fmt_rational(&c.h_value)))
        );
    }
    let mut arrows: Vec<(&str, i64)> = m.torsion_arrows.iter().map(|t| (t.at.as_str(), t.weight)).collect();
    arrows.sort_unstable();
    for (at, w) in &arrows {
        let sink = format!("torsion:{at}:{w}");
        let _ = writeln!(
            out,
            "  {} [label={}, shape=plaintext];",
            dot_id(&sink),
            dot_id(&format!("ℤ/{w}"))
        );
    }
    let mut edges: Vec<(&str, &str, i64, u64)> = m
        .edges
        .iter()
        .map(|e| (e.from.as_str(), e.to.as_str(), e.weight, e.multiplicity))
        .collect();
    edges.sort_unstable();
    for (a, b, k, mult) in edges {
        let label = if mult > 1 {
            format!("+{k}/-{k} x{mult}")
        } else {
            format!("+{k}/-{k}")
        };
        let _ = writeln!(out, "  {} -> {} [label={}];", dot_id(a), dot_id(b), dot_id(&label));
    }
    for (at, w) in &arrows {
        let sink = format!("torsion:{at}:{w}");
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, label={}];",
            dot_id(at),
            dot_id(&sink),
            dot_id(&format!("+{w}"))
        );
    }
    out.push_str("}\n");
    out
}

/// Two lattice directions and the characters of the coordinate generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionWeights {
    pub v: Vec<i64>,
    pub v_prime: Vec<i64>,
    pub characters: Vec<Vec<i64>>,
}

fn pairing(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `min_j <v, w_j> / <v', w_j>`, requiring both directions to contract
/// every generator.
pub fn action_compare_k(a: &ActionWeights) -> Result<Rational> {
    if a.characters.is_empty() {
        return Err(Error::InvalidInput("no characters given".into()));
    }
    let n = a.v.len();
    if a.v_prime.len() != n || a.characters.iter().any(|w| w.len() != n) {
        return Err(Error::InvalidInput("lattice vectors have different lengths".into()));
    }
    let mut best: Option<Rational> = None;
    for w in &a.characters {
        let (p, q) = (pairing(&a.v, w), pairing(&a.v_prime, w));
        if p <= 0 || q <= 0 {
            return Err(Error::InvalidInput(format!(
                "character {w:?} is not contracted by both directions"
            )));
        }
        let r = Rational::new(p.into(), q.into());
        best = Some(match best {
            Some(b) if b <= r => b,
            _ => r,
        });
    }
    Ok(best.unwrap_or_else(|| int(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{builtin_fixture, fixture_names};
    use crate::numerics::rat;

    fn sample_weights(v_prime: Vec<i64>) -> ActionWeights {
        ActionWeights {
            v: vec![1, 1],
            v_prime,
            characters: vec![vec![1, 2], vec![2, 1], vec![1, 1]],
        }
    }

    #[test]
    fn fixtures_pass_graph_checks() {
        for name in fixture_names() {
            let m = builtin_fixture(name).unwrap();
            let bad: Vec<_> = validate_graph(&m).into_iter().filter(|f| !f.passed).collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }

    #[test]
    fn mckay_chain_sums() {
        let m = builtin_fixture("a4_mckay").unwrap();
        let f = validate_graph(&m);
        assert_eq!(f.iter().filter(|x| x.rule == "chain_sum").count(), 5);
        assert_eq!(leaves(&m).len(), 2);
        assert_eq!(f.iter().filter(|x| x.rule == "leaf_arrow" && x.passed).count(), 2);
    }

    #[test]
    fn a2_a_shape() {
        let m = builtin_fixture("a2_a").unwrap();
        assert_eq!(m.components.len(), 3);
        assert!(m.edges.iter().all(|e| e.from == "p"));
        assert_eq!(topological_order(&m).unwrap()[0], "p");
    }

    #[test]
    fn reversed_edge_is_flagged() {
        let mut m = builtin_fixture("a2_b").unwrap();
        let e = &mut m.edges[0];
        std::mem::swap(&mut e.from, &mut e.to);
        let bad: Vec<_> = validate_graph(&m).into_iter().filter(|f| !f.passed).collect();
        assert!(bad.iter().any(|f| f.rule == "edge_order"));
    }

    #[test]
    fn cycle_and_disconnection_are_flagged() {
        let mut m = builtin_fixture("a4_mckay").unwrap();
        let mut back = m.edges[0].clone();
        std::mem::swap(&mut back.from, &mut back.to);
        m.edges.push(back);
        let f = validate_graph(&m);
        assert!(f.iter().any(|x| x.rule == "acyclic" && !x.passed));
        assert!(topological_order(&m).is_err());
        let mut m = builtin_fixture("a4_mckay").unwrap();
        m.edges.retain(|e| e.to != "q2");
        let f = validate_graph(&m);
        assert!(f.iter().any(|x| x.rule == "connected" && !x.passed));
    }

    #[test]
    fn ab_chains() {
        let a = ab_ideal_ranks(&builtin_fixture("a1_phi1").unwrap());
        let b = ab_ideal_ranks(&builtin_fixture("a1_phi2").unwrap());
        assert_eq!(a, b);
        assert_eq!(a, vec![GradedRanks::from([(0, 1), (2, 1)]), GradedRanks::from([(2, 1)]), GradedRanks::new()]);
        assert_eq!(ab_total_ranks(&builtin_fixture("s32").unwrap()), vec![10, 9, 5, 2, 0]);
        let mut single = builtin_fixture("a2_b").unwrap();
        single.components.truncate(1);
        assert_eq!(ab_total_ranks(&single), vec![2, 0]);
    }

    #[test]
    fn dot_output() {
        let m = builtin_fixture("a4_mckay").unwrap();
        let d = to_dot(&m);
        assert_eq!(d.matches("style=dashed").count(), 2);
        assert_eq!(d.matches(" -> ").count(), 6);
        assert_eq!(d.matches("ℤ/5").count(), 2);
        assert_eq!(d, to_dot(&m));
        let b = to_dot(&builtin_fixture("a2_b").unwrap());
        assert_eq!(b.matches(" -> ").count() - b.matches("dashed").count(), 1);
    }

    #[test]
    fn comparison_constant() {
        assert_eq!(action_compare_k(&sample_weights(vec![1, 0])).unwrap(), rat(3, 2));
        assert_eq!(action_compare_k(&sample_weights(vec![0, 1])).unwrap(), rat(3, 2));
        assert_eq!(action_compare_k(&sample_weights(vec![1, 1])).unwrap(), int(1));
        let bad = ActionWeights { v: vec![1, -1], v_prime: vec![1, 0], characters: vec![vec![1, 1]] };
        assert!(action_compare_k(&bad).is_err());
    }
}

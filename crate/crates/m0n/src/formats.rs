//! Serialized forms of trees and Keel elements, and Graphviz output.

use std::fmt::{Display, Write as _};
use std::str::FromStr;

use m0n_core::keel::{DivisorClass, KeelElement};
use m0n_core::rational::parse_rational;
use m0n_core::{LabelSet, Rational, StableTree};
use serde::{Deserialize, Serialize};

/// A stable tree as stored on disk. `leaves[i]` is the vertex carrying
/// `labels[i]`; labels are listed in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub labels: Vec<String>,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub leaves: Vec<usize>,
}

impl TreeJson {
    pub fn from_tree<L: Ord + Clone + Display>(t: &StableTree<L>) -> Self {
        Self {
            labels: t.labels().iter().map(ToString::to_string).collect(),
            vertices: t.vertex_count(),
            edges: t.edges().to_vec(),
            leaves: t.leaf_vertices().to_vec(),
        }
    }

    pub fn to_tree<L: Ord + Clone + FromStr>(&self) -> Result<StableTree<L>, String> {
        if self.labels.len() != self.leaves.len() {
            return Err(format!(
                "{} labels but {} leaf vertices",
                self.labels.len(),
                self.leaves.len()
            ));
        }
        let parsed: Vec<(L, usize)> = self
            .labels
            .iter()
            .zip(&self.leaves)
            .map(|(s, &v)| s.parse::<L>().map(|l| (l, v)).map_err(|_| format!("bad label {s:?}")))
            .collect::<Result<_, _>>()?;
        StableTree::from_leaf_map(self.vertices, self.edges.clone(), parsed).map_err(|e| e.to_string())
    }
}

/// Reads a tree from inline JSON or from a file given as `@path`.
pub fn read_tree<L: Ord + Clone + FromStr>(arg: &str) -> Result<StableTree<L>, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => arg.to_string(),
    };
    let json: TreeJson = serde_json::from_str(&text).map_err(|e| format!("tree JSON: {e}"))?;
    json.to_tree()
}

/// One line per tree, e.g. `v0(1 2 e0) v1(3 4 5 e0)`.
pub fn tree_text<L: Ord + Clone + Display>(t: &StableTree<L>) -> String {
    let mut parts: Vec<Vec<String>> = vec![Vec::new(); t.vertex_count()];
    for (l, &v) in t.labels().iter().zip(t.leaf_vertices()) {
        parts[v].push(l.to_string());
    }
    for (e, &(a, b)) in t.edges().iter().enumerate() {
        parts[a].push(format!("e{e}"));
        parts[b].push(format!("e{e}"));
    }
    parts
        .iter()
        .enumerate()
        .map(|(v, p)| format!("v{v}({})", p.join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn tree_body<L: Ord + Clone + Display>(out: &mut String, t: &StableTree<L>, prefix: &str, indent: &str) {
    for v in 0..t.vertex_count() {
        let _ = writeln!(out, "{indent}{prefix}v{v} [shape=point];");
    }
    for &(a, b) in t.edges() {
        let _ = writeln!(out, "{indent}{prefix}v{a} -- {prefix}v{b};");
    }
    for (l, &v) in t.labels().iter().zip(t.leaf_vertices()) {
        let name = quote(&format!("{prefix}{l}"));
        let _ = writeln!(
            out,
            "{indent}{name} [shape=plaintext, label={}];",
            quote(&l.to_string())
        );
        let _ = writeln!(out, "{indent}{prefix}v{v} -- {name};");
    }
}

pub fn tree_dot<L: Ord + Clone + Display>(t: &StableTree<L>) -> String {
    let mut out = String::from("graph tree {\n");
    tree_body(&mut out, t, "", "  ");
    out.push_str("}\n");
    out
}

/// Several trees, one cluster each.
pub fn forest_dot<L: Ord + Clone + Display>(trees: &[StableTree<L>]) -> String {
    let mut out = String::from("graph forest {\n");
    for (k, t) in trees.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{");
        let _ = writeln!(out, "    label=\"{k}\";");
        tree_body(&mut out, t, &format!("t{k}_"), "    ");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram with nodes `(rank, label)` grouped by rank and an arrow
/// for each cover `(a, b)`.
pub fn hasse_dot(name: &str, nodes: &[(usize, String)], covers: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {name} {{\n");
    let max_rank = nodes.iter().map(|n| n.0).max().unwrap_or(0);
    for r in 0..=max_rank {
        let members: Vec<String> = nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.0 == r)
            .map(|(i, _)| format!("n{i}"))
            .collect();
        if !members.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {} }}", members.join("; "));
        }
    }
    for (i, (_, label)) in nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(label));
    }
    for &(a, b) in covers {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// A comma-separated side of a divisor, as label indices into `labels`.
pub fn parse_side(labels: &LabelSet<u32>, s: &str) -> Result<DivisorClass, String> {
    let idx: Vec<usize> = s
        .split(',')
        .map(|t| {
            let l: u32 = t.trim().parse().map_err(|_| format!("bad label {t:?}"))?;
            labels
                .index_of(&l)
                .ok_or_else(|| format!("label {l} is not in 1..={}", labels.len()))
        })
        .collect::<Result<_, _>>()?;
    DivisorClass::new(labels.len(), idx).map_err(|e| e.to_string())
}

/// Parses `c:side|side;c:side|side` into a homogeneous element. An empty
/// monomial (`c:`) is the constant `c`.
pub fn parse_element(labels: &LabelSet<u32>, s: &str) -> Result<KeelElement, String> {
    let mut terms = Vec::new();
    let mut degree = None;
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, mono) = term
            .split_once(':')
            .ok_or_else(|| format!("term {term:?} needs `coefficient:`"))?;
        let c: Rational = parse_rational(c).map_err(|e| e.to_string())?;
        let m: Vec<DivisorClass> = mono
            .split('|')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|side| parse_side(labels, side))
            .collect::<Result<_, _>>()?;
        if *degree.get_or_insert(m.len()) != m.len() {
            return Err("all terms must have the same degree".into());
        }
        terms.push((m, c));
    }
    let degree = degree.ok_or("empty element")?;
    KeelElement::from_terms(degree, terms).map_err(|e| e.to_string())
}

pub fn monomial_text(labels: &LabelSet<u32>, m: &[DivisorClass]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|d| {
            let side: Vec<String> = d.rep().iter().map(|&i| labels[i].to_string()).collect();
            format!("D{{{}}}", side.join(","))
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn element_text(labels: &LabelSet<u32>, x: &KeelElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.terms()
        .iter()
        .map(|(m, c)| format!("{c}*{}", monomial_text(labels, m)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The `c:side|side` form accepted by [`parse_element`].
pub fn element_input(labels: &LabelSet<u32>, x: &KeelElement) -> String {
    x.terms()
        .iter()
        .map(|(m, c)| {
            let sides: Vec<String> = m
                .iter()
                .map(|d| {
                    d.rep()
                        .iter()
                        .map(|&i| labels[i].to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            format!("{c}:{}", sides.join("|"))
        })
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use m0n_core::trees::enumerate_stable_trees;

    #[test]
    fn tree_json_round_trip() {
        let labels = LabelSet::range(6).unwrap();
        for t in enumerate_stable_trees(&labels, None) {
            let json = serde_json::to_string(&TreeJson::from_tree(&t)).unwrap();
            let back: StableTree<u32> = read_tree(&json).unwrap();
            assert_eq!(back.canonical_form(), t);
        }
    }

    #[test]
    fn element_round_trip() {
        let labels = LabelSet::range(5).unwrap();
        let x = parse_element(&labels, "2:1,2|1,3;-1/2:1,4|3,4").unwrap();
        assert_eq!(x.degree(), 2);
        assert_eq!(parse_element(&labels, &element_input(&labels, &x)).unwrap(), x);
        assert!(parse_element(&labels, "1:1,2;1:1,2|1,3").is_err());
        assert!(parse_element(&labels, "1:1,9").is_err());
    }

    #[test]
    fn dot_escapes_labels() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}

//! Reference tables for generic transitivity and orbit finiteness, embedded
//! from `data/*.json`.  Node labels may be written relative to the rank
//! (`"l"`, `"l-1"`).

use std::sync::OnceLock;

use serde::Deserialize;

use crate::rootsystem::{Family, Nodes, SimpleType};

#[derive(Debug, Deserialize)]
struct Table {
    rows: Vec<Row>,
}

#[derive(Debug, Deserialize)]
struct Row {
    family: String,
    min_rank: usize,
    max_rank: Option<usize>,
    parity: Option<String>,
    rule: Option<String>,
    #[serde(default)]
    n: Vec<usize>,
    #[serde(default)]
    nodes: Vec<String>,
    #[serde(default)]
    parabolics: Vec<Vec<String>>,
    #[serde(default)]
    any_maximal: bool,
}

impl Row {
    fn applies(&self, t: SimpleType) -> bool {
        let family: Family = self.family.parse().expect("family in golden table");
        family == t.family
            && t.rank >= self.min_rank
            && self.max_rank.map_or(true, |m| t.rank <= m)
            && match self.parity.as_deref() {
                Some("odd") => t.rank % 2 == 1,
                Some("even") => t.rank % 2 == 0,
                _ => true,
            }
    }
}

fn label(expr: &str, rank: usize) -> usize {
    let e = expr.replace(' ', "");
    if e == "l" {
        rank
    } else if let Some(k) = e.strip_prefix("l-") {
        rank - k.parse::<usize>().expect("offset in golden table")
    } else {
        e.parse().expect("label in golden table")
    }
}

fn nodes_of(exprs: &[String], rank: usize) -> Nodes {
    let labels: Vec<usize> = exprs.iter().map(|e| label(e, rank)).collect();
    Nodes::from_labels(&labels, rank).expect("golden labels in range")
}

fn load(text: &'static str, cell: &'static OnceLock<Table>) -> &'static Table {
    cell.get_or_init(|| serde_json::from_str(text).expect("valid golden table"))
}

fn maximal_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    load(include_str!("../data/maximal.json"), &T)
}

fn non_maximal_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    load(include_str!("../data/non_maximal.json"), &T)
}

fn finite_table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    load(include_str!("../data/finite_orbits.json"), &T)
}

/// `B_2` and `C_2` coincide with the two nodes exchanged.
fn b2_as_c2(t: SimpleType, nodes: &Nodes) -> (SimpleType, Nodes) {
    if t.family == Family::B && t.rank == 2 {
        (SimpleType { family: Family::C, rank: 2 }, nodes.map(&[1, 0]))
    } else {
        (t, nodes.clone())
    }
}

fn c2_as_b2(t: SimpleType, nodes: &Nodes) -> (SimpleType, Nodes) {
    if t.family == Family::C && t.rank == 2 {
        (SimpleType { family: Family::B, rank: 2 }, nodes.map(&[1, 0]))
    } else {
        (t, nodes.clone())
    }
}

/// Expected verdict for the maximal parabolic `P_i` (1-based `i`).
pub fn maximal_transitive(t: SimpleType, i: usize, n: usize) -> bool {
    if n <= 2 {
        return true;
    }
    let (t, nodes) = b2_as_c2(t, &Nodes::from_labels(&[i], t.rank).expect("node in range"));
    let i = nodes.labels()[0];
    let l = t.rank;
    maximal_table().rows.iter().filter(|r| r.applies(t)).any(|r| {
        if r.rule.is_some() {
            // n < (l+1)^2 / (i (l+1-i))
            n * i * (l + 1 - i) < (l + 1) * (l + 1)
        } else {
            r.n.contains(&n) && r.nodes.iter().any(|e| label(e, l) == i)
        }
    })
}

/// Expected verdict for a non-maximal parabolic outside type `A` and `n >= 3`;
/// `None` when the table does not cover the input.
pub fn non_maximal_transitive(t: SimpleType, nodes: &Nodes, n: usize) -> Option<bool> {
    if t.family == Family::A || nodes.len() < 2 || n < 3 {
        return None;
    }
    let l = t.rank;
    Some(non_maximal_table().rows.iter().filter(|r| r.applies(t)).any(|r| {
        r.n.contains(&n) && r.parabolics.iter().any(|p| nodes_of(p, l) == *nodes)
    }))
}

/// Combined expectation for any nonempty `I` and `n >= 1`, where covered.
pub fn expected_transitive(t: SimpleType, nodes: &Nodes, n: usize) -> Option<bool> {
    match nodes.len() {
        0 => Some(true),
        1 => Some(maximal_transitive(t, nodes.labels()[0], n)),
        _ if n <= 2 => Some(true),
        _ => non_maximal_transitive(t, nodes, n),
    }
}

/// Whether `(G/P)^3` has finitely many orbits; for maximal `P` this is
/// equivalent to `G/P x G/P` being spherical.
pub fn finite_orbits(t: SimpleType, nodes: &Nodes) -> bool {
    if nodes.len() != 1 {
        return false;
    }
    let (t, nodes) = c2_as_b2(t, nodes);
    let l = t.rank;
    finite_table().rows.iter().filter(|r| r.applies(t)).any(|r| {
        r.any_maximal || r.parabolics.iter().any(|p| nodes_of(p, l) == nodes)
    })
}

/// Listed parabolics of the non-maximal table for `t`, as node sets.
pub fn non_maximal_parabolics(t: SimpleType) -> Vec<Nodes> {
    non_maximal_table()
        .rows
        .iter()
        .filter(|r| r.applies(t))
        .flat_map(|r| r.parabolics.iter().map(|p| nodes_of(p, t.rank)))
        .collect()
}

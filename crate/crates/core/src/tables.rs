//! Sweeps that recompute the classification tables cell by cell and compare
//! with the embedded reference data.

use rayon::prelude::*;
use serde::Serialize;

use crate::golden;
use crate::orbitrank::{levi_open_orbit, spherical_with, transitivity_with, Engine, OrbitError, RankConfig, TransitivityVerdict};
use crate::parabolic::is_self_opposite;
use crate::rootsystem::{Family, Nodes, SimpleType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Maximal,
    NonMaximal,
    Sphericity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSpec {
    pub ty: SimpleType,
    pub nodes: Nodes,
    /// Number of factors; sphericity cells use 2.
    pub n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    #[serde(rename = "type")]
    pub ty: String,
    pub parabolic: String,
    pub n: usize,
    pub verdict: TransitivityVerdict,
    pub expected: Option<bool>,
    /// Levi-route verdict with `n - 2` copies, for self-opposite `P` and `n >= 3`.
    pub levi_check: Option<TransitivityVerdict>,
}

impl CellResult {
    pub fn agrees(&self) -> bool {
        self.expected.map_or(true, |e| e == self.verdict.transitive)
    }

    pub fn levi_agrees(&self) -> bool {
        self.levi_check.as_ref().map_or(true, |l| l.transitive == self.verdict.transitive)
    }
}

fn singleton(l: usize, i: usize) -> Nodes {
    Nodes::from_labels(&[i], l).expect("node in range")
}

/// Largest `n` allowed by the type-A rule, i.e. `n i (l+1-i) < (l+1)^2`.
fn type_a_bound(l: usize, i: usize) -> usize {
    ((l + 1) * (l + 1) - 1) / (i * (l + 1 - i))
}

/// Maximal-parabolic cells: type `A` up to one past the bound, other types
/// `n = 3, 4`, and `n = 5` for the two `E_6` nodes where `n = 4` is positive.
pub fn maximal_cells(t: SimpleType) -> Vec<CellSpec> {
    let l = t.rank;
    let mut cells = Vec::new();
    for i in 1..=l {
        let ns: Vec<usize> = match t.family {
            Family::A => (3..=type_a_bound(l, i) + 1).collect(),
            Family::E if l == 6 && (i == 1 || i == 6) => vec![3, 4, 5],
            _ => vec![3, 4],
        };
        cells.extend(ns.into_iter().map(|n| CellSpec { ty: t, nodes: singleton(l, i), n }));
    }
    cells
}

/// Non-maximal cells at `n = 3`: every subset of at least two nodes whose
/// maximal parabolics are all transitive at `n = 3` (any other subset fails
/// by monotonicity in `P`).
pub fn non_maximal_cells(t: SimpleType) -> Vec<CellSpec> {
    if t.family == Family::A {
        return Vec::new();
    }
    let l = t.rank;
    let good: Vec<usize> = (1..=l).filter(|&i| golden::maximal_transitive(t, i, 3)).collect();
    let mut cells = Vec::new();
    for mask in 1u32..(1 << good.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let labels: Vec<usize> = good.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &i)| i).collect();
        cells.push(CellSpec { ty: t, nodes: Nodes::from_labels(&labels, l).expect("in range"), n: 3 });
    }
    cells
}

/// Sphericity of `G/P_i x G/P_i` for every maximal parabolic.
pub fn sphericity_cells(t: SimpleType) -> Vec<CellSpec> {
    (1..=t.rank).map(|i| CellSpec { ty: t, nodes: singleton(t.rank, i), n: 2 }).collect()
}

pub fn cells(kind: TableKind, t: SimpleType) -> Vec<CellSpec> {
    match kind {
        TableKind::Maximal => maximal_cells(t),
        TableKind::NonMaximal => non_maximal_cells(t),
        TableKind::Sphericity => sphericity_cells(t),
    }
}

pub fn evaluate_cell(engine: &Engine, kind: TableKind, cell: &CellSpec, config: &RankConfig) -> Result<CellResult, OrbitError> {
    let (alg, pd) = engine.parabolic(cell.ty, &cell.nodes)?;
    let (verdict, expected, levi_check) = match kind {
        TableKind::Sphericity => {
            let v = spherical_with(&alg, &pd, config);
            (v, Some(golden::finite_orbits(cell.ty, &cell.nodes)), None)
        }
        _ => {
            let v = transitivity_with(&alg, &pd, cell.n, config)?;
            let levi = (cell.n >= 3 && is_self_opposite(alg.root_system(), &cell.nodes))
                .then(|| levi_open_orbit(&alg, &pd, cell.n - 2, config));
            (v, golden::expected_transitive(cell.ty, &cell.nodes, cell.n), levi)
        }
    };
    Ok(CellResult {
        ty: cell.ty.to_string(),
        parabolic: cell.nodes.to_string(),
        n: cell.n,
        verdict,
        expected,
        levi_check,
    })
}

/// Evaluates cells in parallel; results keep the input order.
pub fn evaluate(engine: &Engine, kind: TableKind, cells: &[CellSpec], config: &RankConfig) -> Result<Vec<CellResult>, OrbitError> {
    cells.par_iter().map(|c| evaluate_cell(engine, kind, c, config)).collect()
}

/// Types swept by default for a rank range: all families with rank in range.
pub fn types_in_range(min_rank: usize, max_rank: usize) -> Vec<SimpleType> {
    SimpleType::catalogue(max_rank).into_iter().filter(|t| t.rank >= min_rank).collect()
}

//! Root systems of simple Lie algebras.
//!
//! Simple roots are numbered as in Bourbaki:
//!
//! ```text
//! A_l   1 - 2 - ... - l
//! B_l   1 - 2 - ... - (l-1) => l        (alpha_l short)
//! C_l   1 - 2 - ... - (l-1) <= l        (alpha_l long)
//! D_l   1 - 2 - ... - (l-2) - (l-1)
//!                       \
//!                        l
//! E_l   1 - 3 - 4 - 5 - ... - l
//!               |
//!               2
//! F_4   1 - 2 => 3 - 4                  (alpha_1, alpha_2 long)
//! G_2   1 <= 2                          (alpha_2 long)
//! ```
//!
//! Roots are integer coordinate vectors over the simple roots.  Positive roots
//! are generated by closure under root strings and kept sorted by height, then
//! by coordinates in decreasing lexicographic order (so `alpha_1` comes first).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unsupported type {family}_{rank}")]
    InvalidType { family: Family, rank: usize },
    #[error("cannot parse type '{0}'")]
    Parse(String),
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootSystemError::Parse(s.to_string())),
        }
    }
}

/// A simple Cartan type such as `E_6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    /// `D_3` is accepted here (it is `A_3`); user-facing code rejects it.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::InvalidType { family, rank })
        }
    }

    /// All irreducible types of rank at most `max_rank`, with `B_l, C_l` from
    /// `l >= 2` and `D_l` from `l >= 4`.
    pub fn catalogue(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for l in 1..=max_rank {
            out.push(SimpleType { family: Family::A, rank: l });
        }
        for l in 2..=max_rank {
            out.push(SimpleType { family: Family::B, rank: l });
        }
        for l in 2..=max_rank {
            out.push(SimpleType { family: Family::C, rank: l });
        }
        for l in 4..=max_rank {
            out.push(SimpleType { family: Family::D, rank: l });
        }
        for l in 6..=max_rank.min(8) {
            out.push(SimpleType { family: Family::E, rank: l });
        }
        if max_rank >= 4 {
            out.push(SimpleType { family: Family::F, rank: 4 });
        }
        if max_rank >= 2 {
            out.push(SimpleType { family: Family::G, rank: 2 });
        }
        out
    }

    pub fn expected_positive_roots(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;
    /// Accepts `E6`, `E_6`, `d4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam: Family = chars
            .next()
            .ok_or_else(|| RootSystemError::Parse(s.to_string()))?
            .to_string()
            .parse()?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest.parse().map_err(|_| RootSystemError::Parse(s.to_string()))?;
        SimpleType::new(fam, rank)
    }
}

/// A root as coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

/// A set of Dynkin nodes, stored 0-based; displayed with the usual 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Nodes(BTreeSet<usize>);

impl Nodes {
    pub fn empty() -> Self {
        Self(BTreeSet::new())
    }

    /// From 1-based labels as written in `P_{1,6}`.
    pub fn from_labels(labels: &[usize], rank: usize) -> Result<Self, RootSystemError> {
        let mut set = BTreeSet::new();
        for &node in labels {
            if node == 0 || node > rank {
                return Err(RootSystemError::NodeOutOfRange { node, rank });
            }
            set.insert(node - 1);
        }
        Ok(Self(set))
    }

    /// Parses a comma list of 1-based labels, e.g. `"1,6"`.
    pub fn parse(s: &str, rank: usize) -> Result<Self, RootSystemError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let labels = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| RootSystemError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_labels(&labels, rank)
    }

    pub fn all(rank: usize) -> Self {
        Self((0..rank).collect())
    }

    pub fn single(idx: usize) -> Self {
        Self([idx].into_iter().collect())
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.contains(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Nodes) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn map(&self, perm: &[usize]) -> Nodes {
        Nodes(self.0.iter().map(|&i| perm[i]).collect())
    }
}

impl fmt::Display for Nodes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{}", l.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: SimpleType,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    cartan: Vec<Vec<i64>>,
    /// Symmetric form on simple roots, short roots normalized to length 2.
    form: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

fn symmetric_form(t: SimpleType) -> Vec<Vec<i64>> {
    let l = t.rank;
    let mut g = vec![vec![0i64; l]; l];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.family {
        Family::A => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 0..l - 1 {
                g[i][i] = 4;
            }
            g[l - 1][l - 1] = 2;
            for i in 0..l - 1 {
                link(&mut g, i, i + 1, -2);
            }
        }
        Family::C => {
            for i in 0..l - 1 {
                g[i][i] = 2;
            }
            g[l - 1][l - 1] = 4;
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 2, l - 1, -2);
        }
        Family::D => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 3, l - 1, -1);
        }
        Family::E => {
            for i in 0..l {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..l - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

/// Builds the root system of a simple type.
pub fn build_root_system(t: SimpleType) -> Result<RootSystem, RootSystemError> {
    let t = SimpleType::new(t.family, t.rank)?;
    let l = t.rank;
    let form = symmetric_form(t);
    let cartan: Vec<Vec<i64>> =
        (0..l).map(|i| (0..l).map(|j| 2 * form[i][j] / form[j][j]).collect()).collect();

    let unit = |i: usize| {
        let mut v = vec![0i64; l];
        v[i] = 1;
        v
    };
    let mut known: BTreeSet<Vec<i64>> = (0..l).map(unit).collect();
    let mut layer: Vec<Vec<i64>> = (0..l).map(unit).collect();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for r in &layer {
            for i in 0..l {
                // alpha_i-string through r: r - p a_i, ..., r + q a_i with p - q = <r, a_i^vee>
                let mut p = 0;
                let mut probe = r.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|k| r[k] * cartan[k][i]).sum();
                if p - pairing > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        known.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }

    let mut positive: Vec<Root> = known.into_iter().map(Root).collect();
    positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    let index = positive.iter().enumerate().map(|(i, r)| (r.0.clone(), i)).collect();
    Ok(RootSystem { ty: t, cartan, form, positive, index })
}

impl RootSystem {
    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Dimension of the Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        self.rank() + 2 * self.num_positive()
    }

    /// Index of a positive root.
    pub fn positive_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        if self.index.contains_key(coords) {
            return true;
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    pub fn simple_index(&self, root: usize) -> Option<usize> {
        let r = &self.positive[root].0;
        if r.iter().sum::<i64>() == 1 {
            r.iter().position(|&c| c == 1)
        } else {
            None
        }
    }

    /// Symmetric invariant form on root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            if a[i] == 0 {
                continue;
            }
            for j in 0..l {
                s += a[i] * self.form[i][j] * b[j];
            }
        }
        s
    }

    /// Squared length of a simple root.
    pub fn simple_norm(&self, i: usize) -> i64 {
        self.form[i][i]
    }

    /// `<r, alpha_i^vee>`.
    pub fn pairing(&self, r: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|k| r[k] * self.cartan[k][i]).sum()
    }

    pub fn reflect(&self, r: &[i64], i: usize) -> Vec<i64> {
        let p = self.pairing(r, i);
        let mut out = r.to_vec();
        out[i] -= p;
        out
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("nonempty root system")
    }

    /// Coordinates of a root at the positions in `nodes`.
    pub fn i_degree(&self, r: &Root, nodes: &Nodes) -> Result<Vec<i64>, RootSystemError> {
        if r.0.len() != self.rank() || !self.is_root(&r.0) {
            return Err(RootSystemError::NotARoot(r.0.clone()));
        }
        Ok(nodes.iter().map(|i| r.0[i]).collect())
    }
}

pub fn i_degree(rs: &RootSystem, r: &Root, nodes: &Nodes) -> Result<Vec<i64>, RootSystemError> {
    rs.i_degree(r, nodes)
}

/// The diagram involution `-w_0`, as a 0-based permutation of simple roots.
pub fn minus_w0_involution(rs: &RootSystem) -> Vec<usize> {
    let l = rs.rank();
    let mut perm: Vec<usize> = (0..l).collect();
    match rs.simple_type().family {
        Family::A => perm.reverse(),
        Family::D if l % 2 == 1 => perm.swap(l - 2, l - 1),
        Family::E if l == 6 => {
            perm.swap(0, 5);
            perm.swap(2, 4);
        }
        _ => {}
    }
    perm
}

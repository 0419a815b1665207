//! Parabolic subalgebras `p_I`, their opposites, Levi factors and nilradicals.
//!
//! `I` is the set of simple roots removed from the lowering directions: `p_I`
//! contains the Borel subalgebra plus `y_alpha` for every positive `alpha`
//! whose expansion avoids `I`.  `I = {}` gives the whole algebra and `I = all`
//! gives the Borel.

use thiserror::Error;

use crate::chevalley::ChevalleyAlgebra;
use crate::rootsystem::{minus_w0_involution, Nodes, Root, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicData {
    pub nodes: Nodes,
    /// Negative roots whose expansion avoids `I`.
    pub phi_i: Vec<Root>,
    pub p_basis: Vec<usize>,
    pub p_minus_basis: Vec<usize>,
    pub levi_basis: Vec<usize>,
    pub u_minus_basis: Vec<usize>,
    /// Positive-root indices `alpha` with `y_alpha` spanning the nilradical.
    pub u_minus_roots: Vec<usize>,
    pub flag_dim: usize,
}

impl ParabolicData {
    /// Indices of the Borel subalgebra `h + sum g_alpha (alpha > 0)`.
    pub fn borel_basis(alg: &ChevalleyAlgebra) -> Vec<usize> {
        (0..alg.rank() + alg.num_positive()).collect()
    }

    /// Mirror of `u_minus_basis` under `y <-> x`.
    pub fn u_plus_basis(&self, alg: &ChevalleyAlgebra) -> Vec<usize> {
        self.u_minus_roots.iter().map(|&r| alg.raising_index(r)).collect()
    }
}

fn avoids(root: &Root, nodes: &Nodes) -> bool {
    nodes.iter().all(|i| root.0[i] == 0)
}

pub fn parabolic_data(alg: &ChevalleyAlgebra, nodes: &Nodes) -> Result<ParabolicData, ParabolicError> {
    let rank = alg.rank();
    if let Some(index) = nodes.iter().find(|&i| i >= rank) {
        return Err(ParabolicError::IndexOutOfRange { index: index + 1, rank });
    }
    let rs = alg.root_system();
    let mut phi_i = Vec::new();
    let mut levi_roots = Vec::new();
    let mut u_minus_roots = Vec::new();
    for (k, r) in rs.positive_roots().iter().enumerate() {
        if avoids(r, nodes) {
            phi_i.push(r.neg());
            levi_roots.push(k);
        } else {
            u_minus_roots.push(k);
        }
    }
    let cartan: Vec<usize> = (0..rank).collect();
    let raising = |ks: &[usize]| ks.iter().map(|&k| alg.raising_index(k)).collect::<Vec<_>>();
    let lowering = |ks: &[usize]| ks.iter().map(|&k| alg.lowering_index(k)).collect::<Vec<_>>();
    let all: Vec<usize> = (0..alg.num_positive()).collect();

    let p_basis = [cartan.clone(), raising(&all), lowering(&levi_roots)].concat();
    let mut p_minus_basis = [cartan.clone(), raising(&levi_roots), lowering(&all)].concat();
    p_minus_basis.sort_unstable();
    let levi_basis = [cartan, raising(&levi_roots), lowering(&levi_roots)].concat();
    let u_minus_basis = lowering(&u_minus_roots);
    Ok(ParabolicData {
        nodes: nodes.clone(),
        phi_i,
        p_basis,
        p_minus_basis,
        levi_basis,
        flag_dim: u_minus_basis.len(),
        u_minus_basis,
        u_minus_roots,
    })
}

/// Whether `P_I` is conjugate to its opposite, i.e. `I` is stable under `-w_0`.
pub fn is_self_opposite(rs: &RootSystem, nodes: &Nodes) -> bool {
    let sigma = minus_w0_involution(rs);
    nodes.map(&sigma) == *nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_algebra;
    use crate::rootsystem::{build_root_system, SimpleType};

    fn data(t: &str, labels: &[usize]) -> (ChevalleyAlgebra, ParabolicData) {
        let t: SimpleType = t.parse().unwrap();
        let alg = build_algebra(&build_root_system(t).unwrap());
        let nodes = Nodes::from_labels(labels, t.rank).unwrap();
        let pd = parabolic_data(&alg, &nodes).unwrap();
        (alg, pd)
    }

    #[test]
    fn flag_dimensions() {
        assert_eq!(data("A2", &[1, 2]).1.flag_dim, 3);
        assert_eq!(data("B4", &[1, 4]).1.flag_dim, 13);
        assert_eq!(data("E6", &[1]).1.flag_dim, 16);
        assert_eq!(data("B3", &[1]).1.flag_dim, 5);
    }

    #[test]
    fn boundary_cases() {
        let (alg, pd) = data("C3", &[]);
        assert_eq!(pd.flag_dim, 0);
        assert_eq!(pd.p_basis.len(), alg.dim());
        let (alg, pd) = data("C3", &[1, 2, 3]);
        assert_eq!(pd.p_basis, ParabolicData::borel_basis(&alg));
        assert_eq!(pd.levi_basis, vec![0, 1, 2]);
    }

    #[test]
    fn out_of_range_index() {
        let alg = build_algebra(&build_root_system("A2".parse().unwrap()).unwrap());
        assert!(parabolic_data(&alg, &Nodes::from_labels(&[2], 2).unwrap()).is_ok());
        let bad = Nodes::from_labels(&[3], 3).unwrap();
        assert_eq!(parabolic_data(&alg, &bad), Err(ParabolicError::IndexOutOfRange { index: 3, rank: 2 }));
    }

    #[test]
    fn self_opposite_cases() {
        let (alg, _) = data("D4", &[3, 4]);
        assert!(is_self_opposite(alg.root_system(), &Nodes::from_labels(&[3, 4], 4).unwrap()));
        let (alg, _) = data("D5", &[1, 5]);
        assert!(!is_self_opposite(alg.root_system(), &Nodes::from_labels(&[1, 5], 5).unwrap()));
        let (alg, _) = data("B3", &[1]);
        for labels in [&[1][..], &[2], &[3], &[1, 3], &[1, 2, 3]] {
            assert!(is_self_opposite(alg.root_system(), &Nodes::from_labels(labels, 3).unwrap()));
        }
    }
}

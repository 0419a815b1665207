//! Decomposition of the nilradical `u^-` into irreducible Levi modules.
//!
//! `y_alpha` lies in the summand indexed by the I-degree of `alpha` (the
//! coefficients of `alpha` at the nodes of `I`).  The center of the Levi factor
//! acts on a summand through a character that is a linear function of this
//! degree; summands report the raw degree as `central_weights`, and the
//! single-parameter weights used in hand computations are linear functionals
//! of it (for example `d_{l-1} - d_l` for `P_{l-1,l}` in type `D_l`).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::ChevalleyAlgebra;
use crate::exactlinalg::{primitive_integer_vector, rat, Rational, RationalMatrix};
use crate::parabolic::ParabolicData;
use crate::rootsystem::Root;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeviError {
    #[error("I is empty, so the nilradical is zero")]
    EmptyParabolic,
    #[error("summand of degree {0:?} is not stable under the Levi factor")]
    NotStable(Vec<i64>),
    #[error("summand of degree {0:?} does not have a unique lowest root")]
    NoUniqueLowest(Vec<i64>),
    #[error("summand of degree {0:?} is not generated by its lowest vector")]
    Reducible(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviSummand {
    pub degree: Vec<i64>,
    /// Negative roots `-alpha` of the vectors `y_alpha` in this summand.
    pub root_list: Vec<Root>,
    /// Chevalley basis indices of the summand.
    pub basis: Vec<usize>,
    pub dim: usize,
    /// The lowest root, i.e. `-alpha` for the highest `alpha` in the summand.
    pub lowest_root: Root,
    /// Pairings of the lowest root with the simple coroots outside `I`.
    pub lowest_weight: Vec<i64>,
    pub central_weights: Vec<i64>,
}

/// Simple roots of the semisimple part of the Levi factor.
fn levi_simple(alg: &ChevalleyAlgebra, pd: &ParabolicData) -> Vec<usize> {
    (0..alg.rank()).filter(|i| !pd.nodes.contains(*i)).collect()
}

fn simple_root_index(alg: &ChevalleyAlgebra, i: usize) -> usize {
    let mut v = vec![0; alg.rank()];
    v[i] = 1;
    alg.root_system().positive_index(&v).expect("simple root")
}

pub fn decompose_nilradical(alg: &ChevalleyAlgebra, pd: &ParabolicData) -> Result<Vec<LeviSummand>, LeviError> {
    if pd.nodes.is_empty() {
        return Err(LeviError::EmptyParabolic);
    }
    let rs = alg.root_system();
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for &k in &pd.u_minus_roots {
        let r = &rs.positive_roots()[k];
        let degree: Vec<i64> = pd.nodes.iter().map(|i| r.0[i]).collect();
        groups.entry(degree).or_default().push(k);
    }
    let simple = levi_simple(alg, pd);
    let levi_set: BTreeSet<usize> = pd.levi_basis.iter().copied().collect();
    let mut out = Vec::new();
    for (degree, roots) in groups {
        let basis: Vec<usize> = roots.iter().map(|&k| alg.lowering_index(k)).collect();
        let members: BTreeSet<usize> = basis.iter().copied().collect();

        for &xi in &levi_set {
            for &b in &basis {
                if alg.basis_bracket(xi, b).iter().any(|(k, _)| !members.contains(k)) {
                    return Err(LeviError::NotStable(degree));
                }
            }
        }

        // lowest vectors: killed by every y_beta, beta a Levi simple root
        let lowest: Vec<usize> = basis
            .iter()
            .copied()
            .filter(|&b| simple.iter().all(|&i| alg.basis_bracket(alg.lowering_index(simple_root_index(alg, i)), b).is_empty()))
            .collect();
        let [low] = lowest[..] else {
            return Err(LeviError::NoUniqueLowest(degree));
        };

        // the module generated by the lowest vector under raising operators
        let mut seen: BTreeSet<usize> = [low].into_iter().collect();
        let mut queue: VecDeque<usize> = [low].into_iter().collect();
        while let Some(b) = queue.pop_front() {
            for &i in &simple {
                for &(k, _) in alg.basis_bracket(alg.raising_index(simple_root_index(alg, i)), b) {
                    if seen.insert(k) {
                        queue.push_back(k);
                    }
                }
            }
        }
        if seen != members {
            return Err(LeviError::Reducible(degree));
        }

        let low_root = match alg.element(low) {
            crate::chevalley::BasisElement::Lowering(k) => rs.positive_roots()[k].neg(),
            _ => unreachable!("nilradical vectors are lowering vectors"),
        };
        let lowest_weight = simple.iter().map(|&j| rs.pairing(&low_root.0, j)).collect();
        out.push(LeviSummand {
            central_weights: degree.clone(),
            degree,
            root_list: roots.iter().map(|&k| rs.positive_roots()[k].neg()).collect(),
            dim: basis.len(),
            basis,
            lowest_root: low_root,
            lowest_weight,
        });
    }
    Ok(out)
}

/// Matrix of `ad(e_xi)` restricted to a summand, in its basis order.
fn restricted_ad(alg: &ChevalleyAlgebra, xi: usize, basis: &[usize]) -> Vec<Vec<i64>> {
    let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let d = basis.len();
    let mut m = vec![vec![0i64; d]; d];
    for (col, &b) in basis.iter().enumerate() {
        for &(k, v) in alg.basis_bracket(xi, b) {
            m[pos[&k]][col] += v;
        }
    }
    m
}

/// Dimension of the space of quadratic forms on the summand invariant under
/// the semisimple part of the Levi factor.
pub fn invariant_quadratic_dim(alg: &ChevalleyAlgebra, pd: &ParabolicData, summand: &LeviSummand) -> usize {
    let d = summand.dim;
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let var: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let sym = |i: usize, j: usize| var[&(i.min(j), i.max(j))];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in levi_simple(alg, pd) {
        let root = simple_root_index(alg, i);
        for xi in [alg.raising_index(root), alg.lowering_index(root)] {
            let a = restricted_ad(alg, xi, &summand.basis);
            // (A^T B + B A)_{pq} = sum_k A_kp B_kq + B_pk A_kq
            for p in 0..d {
                for q in p..d {
                    let mut row = vec![rat(0); pairs.len()];
                    for k in 0..d {
                        if a[k][p] != 0 {
                            row[sym(k, q)] += rat(a[k][p]);
                        }
                        if a[k][q] != 0 {
                            row[sym(p, k)] += rat(a[k][q]);
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return pairs.len();
    }
    RationalMatrix::from_rows(rows).kernel_basis().len()
}

/// Summands carrying an invariant quadratic form, with the central weight of
/// that form (twice the summand's degree).
pub fn invariant_quadratic_weights(
    alg: &ChevalleyAlgebra,
    pd: &ParabolicData,
    summands: &[LeviSummand],
) -> Vec<(usize, Vec<i64>)> {
    summands
        .iter()
        .enumerate()
        .filter(|(_, s)| invariant_quadratic_dim(alg, pd, s) > 0)
        .map(|(k, s)| (k, s.central_weights.iter().map(|w| 2 * w).collect()))
        .collect()
}

/// A nonzero primitive integer relation `sum c_k w_k = 0` among the weights,
/// if one exists; it yields an invariant `prod q_k^{c_k}` of the full Levi.
pub fn weight_balance(weights: &[Vec<i64>]) -> Option<Vec<BigInt>> {
    let first = weights.first()?;
    let m = RationalMatrix::from_fn(first.len(), weights.len(), |i, j| rat(weights[j][i]));
    m.kernel_basis().first().map(|v| primitive_integer_vector(v))
}

//! Rank tests for open orbits.
//!
//! The diagonal orbit through `(g_1 P, ..., g_n P)` is open iff
//! `xi -> (Ad(g_i^{-1}) xi mod p)_i` is onto `(g/p)^n`.  Since `g = u^- + p` on
//! basis indices, the `i`-th block is the `u^-` rows of `Ad(h_i)` for a random
//! group element `h_i`.  Taking `h_1 = 1` turns the first block into a coordinate
//! projection, so the rank equals `flag_dim` plus the rank of the remaining
//! blocks on the columns of `p`.
//!
//! Left multiplication of `h_i` by `P` does not change the point, so by default
//! `h_i` is drawn from the unipotent radical `U^-_P` as an ordered product of
//! root subgroups `exp(t_beta y_beta)` over all nilradical roots; this map is
//! an isomorphism onto an open cell of `G/P`.  Random words from
//! [`GroupWord::random`] are available as an alternative sampler.
//!
//! Verdicts are one-sided: full rank at any sampled point proves openness,
//! while `retries` deficient samples only make a negative answer overwhelmingly
//! likely.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{build_algebra, ChevalleyAlgebra, ExpCache, GroupWord, IntRows, WordFactor};
use crate::exactlinalg::integer_rank;
use crate::parabolic::{parabolic_data, ParabolicData, ParabolicError};
use crate::rootsystem::{build_root_system, Nodes, RootSystemError, SimpleType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Parabolic(#[from] ParabolicError),
    #[error("the number of points must be at least 1")]
    ZeroPoints,
    #[error("P_I with empty I is the whole group; every n is transitive")]
    EmptyParabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    Nilradical,
    Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankConfig {
    pub seed: u64,
    pub retries: usize,
    pub height: i64,
    /// Pairs of unipotent factors per random word; `None` means `2 * rank`.
    pub word_length: Option<usize>,
    pub sampler: Sampler,
}

impl Default for RankConfig {
    fn default() -> Self {
        Self { seed: 0, retries: 5, height: 3, word_length: None, sampler: Sampler::Nilradical }
    }
}

impl RankConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    fn length(&self, alg: &ChevalleyAlgebra) -> usize {
        self.word_length.unwrap_or(2 * alg.rank()).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub achieved_rank: usize,
    pub target_rank: usize,
    pub seeds: Vec<u64>,
    pub retries_used: usize,
    pub matrix_shape: (usize, usize),
}

impl RankCertificate {
    pub fn is_full(&self) -> bool {
        self.achieved_rank == self.target_rank
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectTangent,
    LeviRoute,
    DimensionBound,
    BorelTangent,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DirectTangent => "direct_tangent",
            Method::LeviRoute => "levi_route",
            Method::DimensionBound => "dimension_bound",
            Method::BorelTangent => "borel_tangent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityVerdict {
    pub transitive: bool,
    pub certificate: RankCertificate,
    pub method: Method,
}

/// Deterministic seed mixing (splitmix64 finalizer).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn restrict_columns(rows: IntRows, cols: &[usize]) -> IntRows {
    rows.into_iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect()
}

/// `prod_beta exp(t_beta y_beta)` over the nilradical roots, in root order.
pub fn nilradical_word(pd: &ParabolicData, seed: u64, height: i64) -> GroupWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = pd
        .u_minus_basis
        .iter()
        .map(|&b| WordFactor { basis_index: b, t: rng.gen_range(-height..=height) })
        .collect();
    GroupWord { factors }
}

fn random_rows(alg: &ChevalleyAlgebra, pd: &ParabolicData, cache: &mut ExpCache<'_>, seed: u64, config: &RankConfig) -> IntRows {
    let word = match config.sampler {
        Sampler::Nilradical => nilradical_word(pd, seed, config.height),
        Sampler::Word => GroupWord::random(alg, seed, config.length(alg), config.height).expect("positive word length"),
    };
    word.operator_rows(cache, &pd.u_minus_basis)
}

/// One sample of the tangent map at `(P, h_2^{-1} P, ..., h_n^{-1} P)`.
pub fn tangent_rank(alg: &ChevalleyAlgebra, pd: &ParabolicData, n: usize, seed: u64, config: &RankConfig) -> RankCertificate {
    let target = n * pd.flag_dim;
    let mut cache = ExpCache::new(alg);
    let mut block: IntRows = Vec::new();
    for i in 1..n {
        let rows = random_rows(alg, pd, &mut cache, derive_seed(seed, i as u64), config);
        block.extend(restrict_columns(rows, &pd.p_basis));
    }
    let achieved = if n == 0 { 0 } else { pd.flag_dim + integer_rank(block) };
    RankCertificate {
        achieved_rank: achieved,
        target_rank: target,
        seeds: vec![seed],
        retries_used: 1,
        matrix_shape: (target, alg.dim()),
    }
}

/// One sample of `xi -> ([xi, u_1], ..., [xi, u_c])` on the Levi factor.
pub fn levi_rank(alg: &ChevalleyAlgebra, pd: &ParabolicData, copies: usize, seed: u64, config: &RankConfig) -> RankCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pos: HashMap<usize, usize> = pd.u_minus_basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let mut rows: IntRows = Vec::new();
    for _ in 0..copies {
        let u: Vec<(usize, i64)> =
            pd.u_minus_basis.iter().map(|&b| (b, rng.gen_range(-config.height..=config.height))).collect();
        let mut block = vec![vec![BigInt::zero(); pd.levi_basis.len()]; pd.flag_dim];
        for (col, &xi) in pd.levi_basis.iter().enumerate() {
            for &(b, c) in &u {
                if c == 0 {
                    continue;
                }
                for &(k, v) in alg.basis_bracket(xi, b) {
                    let row = pos[&k];
                    block[row][col] += c * v;
                }
            }
        }
        rows.extend(block);
    }
    let target = copies * pd.flag_dim;
    RankCertificate {
        achieved_rank: integer_rank(rows),
        target_rank: target,
        seeds: vec![seed],
        retries_used: 1,
        matrix_shape: (target, pd.levi_basis.len()),
    }
}

/// One sample of the Borel subalgebra acting on the tangent space of `(G/P)^2`.
pub fn borel_rank(alg: &ChevalleyAlgebra, pd: &ParabolicData, seed: u64, config: &RankConfig) -> RankCertificate {
    let borel = ParabolicData::borel_basis(alg);
    let mut cache = ExpCache::new(alg);
    let mut block: IntRows = Vec::new();
    for i in 0..2 {
        let rows = random_rows(alg, pd, &mut cache, derive_seed(seed, i), config);
        block.extend(restrict_columns(rows, &borel));
    }
    let target = 2 * pd.flag_dim;
    RankCertificate {
        achieved_rank: integer_rank(block),
        target_rank: target,
        seeds: vec![seed],
        retries_used: 1,
        matrix_shape: (target, borel.len()),
    }
}

fn with_retries(config: &RankConfig, stream: u64, method: Method, mut sample: impl FnMut(u64) -> RankCertificate) -> TransitivityVerdict {
    let mut best: Option<RankCertificate> = None;
    let mut seeds = Vec::new();
    let base = derive_seed(config.seed, stream);
    for attempt in 0..config.retries.max(1) {
        let seed = derive_seed(base, attempt as u64);
        seeds.push(seed);
        let cert = sample(seed);
        let full = cert.is_full();
        if best.as_ref().map_or(true, |b| cert.achieved_rank > b.achieved_rank) {
            best = Some(cert);
        }
        if full {
            break;
        }
    }
    let mut certificate = best.expect("at least one attempt");
    certificate.retries_used = seeds.len();
    certificate.seeds = seeds;
    TransitivityVerdict { transitive: certificate.is_full(), certificate, method }
}

fn dimension_bound(rows: usize, cols: usize) -> TransitivityVerdict {
    TransitivityVerdict {
        transitive: false,
        certificate: RankCertificate {
            achieved_rank: rows.min(cols),
            target_rank: rows,
            seeds: Vec::new(),
            retries_used: 0,
            matrix_shape: (rows, cols),
        },
        method: Method::DimensionBound,
    }
}

/// Stream identifiers keep the random points of different tests independent.
fn stream_id(tag: u64, nodes: &Nodes, n: usize) -> u64 {
    let mask = nodes.iter().fold(0u64, |m, i| m | (1 << i));
    derive_seed(tag, mask.wrapping_mul(1_000_003).wrapping_add(n as u64))
}

pub fn transitivity_with(alg: &ChevalleyAlgebra, pd: &ParabolicData, n: usize, config: &RankConfig) -> Result<TransitivityVerdict, OrbitError> {
    if n == 0 {
        return Err(OrbitError::ZeroPoints);
    }
    if n * pd.flag_dim > alg.dim() {
        return Ok(dimension_bound(n * pd.flag_dim, alg.dim()));
    }
    let stream = stream_id(1, &pd.nodes, n);
    Ok(with_retries(config, stream, Method::DirectTangent, |s| tangent_rank(alg, pd, n, s, config)))
}

pub fn levi_open_orbit(alg: &ChevalleyAlgebra, pd: &ParabolicData, copies: usize, config: &RankConfig) -> TransitivityVerdict {
    let rows = copies * pd.flag_dim;
    if rows > pd.levi_basis.len() {
        return dimension_bound(rows, pd.levi_basis.len());
    }
    let stream = stream_id(2, &pd.nodes, copies);
    with_retries(config, stream, Method::LeviRoute, |s| levi_rank(alg, pd, copies, s, config))
}

pub fn spherical_with(alg: &ChevalleyAlgebra, pd: &ParabolicData, config: &RankConfig) -> TransitivityVerdict {
    let cols = alg.rank() + alg.num_positive();
    if 2 * pd.flag_dim > cols {
        return dimension_bound(2 * pd.flag_dim, cols);
    }
    let stream = stream_id(3, &pd.nodes, 2);
    with_retries(config, stream, Method::BorelTangent, |s| borel_rank(alg, pd, s, config))
}

/// Shares Chevalley algebras between computations on the same type.
#[derive(Default)]
pub struct Engine {
    algebras: Mutex<HashMap<SimpleType, Arc<ChevalleyAlgebra>>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn algebra(&self, t: SimpleType) -> Result<Arc<ChevalleyAlgebra>, OrbitError> {
        if let Some(a) = self.algebras.lock().expect("engine lock").get(&t) {
            return Ok(a.clone());
        }
        let alg = Arc::new(build_algebra(&build_root_system(t)?));
        Ok(self.algebras.lock().expect("engine lock").entry(t).or_insert(alg).clone())
    }

    pub fn parabolic(&self, t: SimpleType, nodes: &Nodes) -> Result<(Arc<ChevalleyAlgebra>, ParabolicData), OrbitError> {
        let alg = self.algebra(t)?;
        let pd = parabolic_data(&alg, nodes)?;
        Ok((alg, pd))
    }

    pub fn is_generically_transitive(&self, t: SimpleType, nodes: &Nodes, n: usize, config: &RankConfig) -> Result<TransitivityVerdict, OrbitError> {
        let (alg, pd) = self.parabolic(t, nodes)?;
        transitivity_with(&alg, &pd, n, config)
    }

    pub fn levi_open_orbit(&self, t: SimpleType, nodes: &Nodes, copies: usize, config: &RankConfig) -> Result<TransitivityVerdict, OrbitError> {
        let (alg, pd) = self.parabolic(t, nodes)?;
        Ok(levi_open_orbit(&alg, &pd, copies, config))
    }

    pub fn gtd_flag(&self, t: SimpleType, nodes: &Nodes, config: &RankConfig) -> Result<usize, OrbitError> {
        let (alg, pd) = self.parabolic(t, nodes)?;
        if pd.flag_dim == 0 {
            return Err(OrbitError::EmptyParabolic);
        }
        let mut best = 0;
        for n in 1..=alg.dim() / pd.flag_dim {
            if transitivity_with(&alg, &pd, n, config)?.transitive {
                best = n;
            } else {
                break;
            }
        }
        Ok(best)
    }

    pub fn is_double_flag_spherical(&self, t: SimpleType, nodes: &Nodes, config: &RankConfig) -> Result<TransitivityVerdict, OrbitError> {
        let (alg, pd) = self.parabolic(t, nodes)?;
        Ok(spherical_with(&alg, &pd, config))
    }
}

pub fn is_generically_transitive(t: SimpleType, nodes: &Nodes, n: usize, config: &RankConfig) -> Result<TransitivityVerdict, OrbitError> {
    Engine::new().is_generically_transitive(t, nodes, n, config)
}

pub fn gtd_flag(t: SimpleType, nodes: &Nodes, config: &RankConfig) -> Result<usize, OrbitError> {
    Engine::new().gtd_flag(t, nodes, config)
}

pub fn is_double_flag_spherical(t: SimpleType, nodes: &Nodes, config: &RankConfig) -> Result<TransitivityVerdict, OrbitError> {
    Engine::new().is_double_flag_spherical(t, nodes, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(t: &str, labels: &[usize], n: usize) -> TransitivityVerdict {
        let t: SimpleType = t.parse().unwrap();
        let nodes = Nodes::from_labels(labels, t.rank).unwrap();
        is_generically_transitive(t, &nodes, n, &RankConfig::default()).unwrap()
    }

    #[test]
    fn one_and_two_points_are_transitive() {
        for labels in [&[1][..], &[2], &[1, 2], &[1, 3]] {
            assert!(verdict("B3", labels, 1).transitive);
            assert!(verdict("B3", labels, 2).transitive);
        }
    }

    #[test]
    fn projective_space_bound() {
        // A_3, i = 1: n < 16/3
        assert!(verdict("A3", &[1], 5).transitive);
        let v = verdict("A3", &[1], 6);
        assert!(!v.transitive);
        assert_eq!(v.method, Method::DimensionBound);
    }

    #[test]
    fn grassmannian_of_planes_in_four_space() {
        assert!(verdict("A3", &[2], 3).transitive);
        let v = verdict("A3", &[2], 4);
        assert!(!v.transitive);
        assert_eq!(v.method, Method::DimensionBound);
        assert_eq!(v.certificate.matrix_shape, (16, 15));
    }

    #[test]
    fn deficient_rank_uses_all_retries() {
        let v = verdict("B3", &[2], 3);
        assert!(!v.transitive);
        assert_eq!(v.method, Method::DirectTangent);
        assert_eq!(v.certificate.retries_used, 5);
        assert_eq!(v.certificate.seeds.len(), 5);
        assert!(v.certificate.achieved_rank < v.certificate.target_rank);
        assert_eq!(v.certificate.matrix_shape, (21, 21));
    }

    #[test]
    fn seeds_reproduce() {
        let a = verdict("C3", &[1, 3], 3);
        let b = verdict("C3", &[1, 3], 3);
        assert_eq!(a, b);
        assert!(!a.transitive);
    }

    #[test]
    fn levi_route_small_cases() {
        let engine = Engine::new();
        let t: SimpleType = "D4".parse().unwrap();
        let nodes = Nodes::from_labels(&[3, 4], 4).unwrap();
        let cfg = RankConfig::default();
        assert!(engine.levi_open_orbit(t, &nodes, 1, &cfg).unwrap().transitive);
        let two = engine.levi_open_orbit(t, &nodes, 2, &cfg).unwrap();
        assert!(!two.transitive);
        assert_eq!(two.method, Method::DimensionBound);
    }

    #[test]
    fn gtd_rejects_empty_parabolic() {
        let t: SimpleType = "A2".parse().unwrap();
        assert_eq!(gtd_flag(t, &Nodes::empty(), &RankConfig::default()), Err(OrbitError::EmptyParabolic));
    }
}

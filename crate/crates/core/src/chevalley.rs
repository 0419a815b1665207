//! Chevalley bases with exact integer structure constants, adjoint operators,
//! exponentials of nilpotent adjoints and random group elements in the adjoint
//! picture.
//!
//! Basis order: `h_1..h_l`, then `x_alpha` for positive roots in root order,
//! then `y_alpha = e_{-alpha}` in the same order.  Signs of the structure
//! constants are fixed by declaring `N_{alpha,beta} = p + 1 > 0` on every
//! extraspecial pair, where the first element of the pair is the earliest root
//! (always simple) that can be split off.  Every other constant follows from
//! the standard quadratic relations among the `N`s.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactlinalg::{rat, Rational, RationalMatrix};
use crate::rootsystem::RootSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("element length {got} does not match algebra dimension {dim}")]
    Dimension { dim: usize, got: usize },
    #[error("ad(a) is not nilpotent")]
    NotNilpotent,
    #[error("word length must be at least 1")]
    EmptyWord,
}

/// Sparse integer vector: `(basis index, coefficient)`, sorted by index.
pub type SparseVec = Vec<(usize, i64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    Cartan(usize),
    Raising(usize),
    Lowering(usize),
}

/// A root with sign, indexing the positive root list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SignedRoot {
    positive: bool,
    idx: usize,
}

impl SignedRoot {
    fn neg(self) -> Self {
        Self { positive: !self.positive, idx: self.idx }
    }
}

#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    dim: usize,
    /// `N_{a,b}` for positive roots `a < b` (by index) with `a + b` a root.
    positive_constants: HashMap<(usize, usize), i64>,
    table: Vec<Vec<SparseVec>>,
}

/// An element of the algebra over the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub coeffs: Vec<Rational>,
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[i] = Rational::one();
        e
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self { coeffs: v.iter().map(|&x| rat(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Adjoint,
    GroupElement,
}

/// A linear operator on the algebra, columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdOperator {
    pub matrix: RationalMatrix,
    pub kind: OperatorKind,
}

impl AdOperator {
    pub fn apply(&self, a: &LieElement) -> LieElement {
        LieElement { coeffs: self.matrix.mul_vec(&a.coeffs) }
    }

    /// Product `self * other`; group elements compose to group elements.
    pub fn compose(&self, other: &AdOperator) -> AdOperator {
        let kind = if self.kind == OperatorKind::GroupElement && other.kind == OperatorKind::GroupElement {
            OperatorKind::GroupElement
        } else {
            OperatorKind::Adjoint
        };
        AdOperator { matrix: &self.matrix * &other.matrix, kind }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == RationalMatrix::identity(self.matrix.rows())
    }
}

fn checked_ratio(num: i64, den: i64) -> i64 {
    assert!(den != 0 && num % den == 0, "non-integral structure constant {num}/{den}");
    num / den
}

impl ChevalleyAlgebra {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.rs.num_positive()
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        i
    }

    pub fn raising_index(&self, root: usize) -> usize {
        self.rank() + root
    }

    pub fn lowering_index(&self, root: usize) -> usize {
        self.rank() + self.num_positive() + root
    }

    pub fn element(&self, idx: usize) -> BasisElement {
        let l = self.rank();
        let n = self.num_positive();
        if idx < l {
            BasisElement::Cartan(idx)
        } else if idx < l + n {
            BasisElement::Raising(idx - l)
        } else {
            BasisElement::Lowering(idx - l - n)
        }
    }

    /// Root of a basis vector as signed coordinates; zero for Cartan elements.
    pub fn weight_of(&self, idx: usize) -> Vec<i64> {
        match self.element(idx) {
            BasisElement::Cartan(_) => vec![0; self.rank()],
            BasisElement::Raising(r) => self.rs.positive_roots()[r].0.clone(),
            BasisElement::Lowering(r) => self.rs.positive_roots()[r].neg().0,
        }
    }

    /// Bracket of two basis vectors.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Structure constant `N_{r,s}` for signed roots given as coordinates; zero
    /// when `r + s` is not a root.
    pub fn structure_constant(&self, r: &[i64], s: &[i64]) -> i64 {
        let (Some(a), Some(b)) = (self.signed(r), self.signed(s)) else {
            return 0;
        };
        let sum: Vec<i64> = r.iter().zip(s).map(|(x, y)| x + y).collect();
        if sum.iter().all(|&c| c == 0) || !self.rs.is_root(&sum) {
            return 0;
        }
        self.n_signed(a, b)
    }

    fn signed(&self, r: &[i64]) -> Option<SignedRoot> {
        if let Some(idx) = self.rs.positive_index(r) {
            return Some(SignedRoot { positive: true, idx });
        }
        let neg: Vec<i64> = r.iter().map(|c| -c).collect();
        self.rs.positive_index(&neg).map(|idx| SignedRoot { positive: false, idx })
    }

    fn coords(&self, r: SignedRoot) -> Vec<i64> {
        let c = &self.rs.positive_roots()[r.idx].0;
        if r.positive {
            c.clone()
        } else {
            c.iter().map(|x| -x).collect()
        }
    }

    fn norm(&self, r: SignedRoot) -> i64 {
        let c = &self.rs.positive_roots()[r.idx].0;
        self.rs.inner(c, c)
    }

    fn add_roots(&self, a: SignedRoot, b: SignedRoot) -> Option<SignedRoot> {
        let s: Vec<i64> = self.coords(a).iter().zip(self.coords(b)).map(|(x, y)| x + y).collect();
        if s.iter().all(|&c| c == 0) {
            None
        } else {
            self.signed(&s)
        }
    }

    fn n_positive(&self, a: usize, b: usize) -> i64 {
        if a < b {
            self.positive_constants[&(a, b)]
        } else {
            -self.positive_constants[&(b, a)]
        }
    }

    /// `N_{r,s}` assuming `r + s` is a (nonzero) root whose constants are known.
    fn n_signed(&self, r: SignedRoot, s: SignedRoot) -> i64 {
        match (r.positive, s.positive) {
            (true, true) => self.n_positive(r.idx, s.idx),
            (false, false) => -self.n_positive(r.idx, s.idx),
            (true, false) => self.n_mixed(r, s),
            (false, true) => -self.n_mixed(s, r),
        }
    }

    /// `r` positive, `s` negative.
    fn n_mixed(&self, r: SignedRoot, s: SignedRoot) -> i64 {
        let t = self.add_roots(r, s).expect("mixed pair must sum to a root");
        if t.positive {
            // r + s - t = 0:  N_{r,s} = (t,t)/(r,r) N_{s,-t},  N_{s,-t} = -N_{-s,t}
            let inner = -self.n_positive(s.idx, t.idx);
            checked_ratio(self.norm(t) * inner, self.norm(r))
        } else {
            // u = -(r+s) > 0, r + s + u = 0:  N_{r,s} = (u,u)/(s,s) N_{u,r}
            let u = t.neg();
            checked_ratio(self.norm(u) * self.n_positive(u.idx, r.idx), self.norm(s))
        }
    }

    fn n_or_zero(&self, r: SignedRoot, s: SignedRoot) -> i64 {
        match self.add_roots(r, s) {
            Some(_) => self.n_signed(r, s),
            None => 0,
        }
    }

    /// Bracket of arbitrary elements.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, ChevalleyError> {
        for e in [a, b] {
            if e.dim() != self.dim {
                return Err(ChevalleyError::Dimension { dim: self.dim, got: e.dim() });
            }
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for &(k, c) in &self.table[i][j] {
                    out[k] += &ab * rat(c);
                }
            }
        }
        Ok(LieElement { coeffs: out })
    }

    /// Matrix of `ad(a)`.
    pub fn ad(&self, a: &LieElement) -> Result<AdOperator, ChevalleyError> {
        if a.dim() != self.dim {
            return Err(ChevalleyError::Dimension { dim: self.dim, got: a.dim() });
        }
        let mut m = RationalMatrix::zeros(self.dim, self.dim);
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in &self.table[i][j] {
                    let v = m.get(k, j) + ai * rat(c);
                    m.set(k, j, v);
                }
            }
        }
        Ok(AdOperator { matrix: m, kind: OperatorKind::Adjoint })
    }

    /// Sparse matrix of `ad(e_idx)^k / k!` for `k = 1..`, until it vanishes.
    /// Entries are integers for root vectors of a Chevalley basis.
    pub fn divided_powers(&self, idx: usize) -> Vec<Vec<(usize, usize, i64)>> {
        let mut out = Vec::new();
        // images[j] = ad(e)^k/k! applied to basis j, as sparse rational vector
        let mut images: Vec<HashMap<usize, BigRational>> = (0..self.dim)
            .map(|j| [(j, Rational::one())].into_iter().collect())
            .collect();
        for k in 1..=self.dim + 1 {
            let kk = rat(k as i64);
            let mut any = false;
            let mut entries = Vec::new();
            for (j, img) in images.iter_mut().enumerate() {
                let mut next: HashMap<usize, BigRational> = HashMap::new();
                for (&b, coef) in img.iter() {
                    for &(c, v) in &self.table[idx][b] {
                        *next.entry(c).or_insert_with(Rational::zero) += coef * rat(v) / &kk;
                    }
                }
                next.retain(|_, v| !v.is_zero());
                for (&row, v) in &next {
                    any = true;
                    assert!(v.denom().is_one(), "divided power is not integral");
                    entries.push((row, j, v.numer().to_i64().expect("small divided power")));
                }
                *img = next;
            }
            if !any {
                return out;
            }
            entries.sort_unstable();
            out.push(entries);
        }
        panic!("basis element {idx} is not ad-nilpotent");
    }
}

/// Builds the Chevalley basis and its bracket table.
pub fn build_algebra(rs: &RootSystem) -> ChevalleyAlgebra {
    let l = rs.rank();
    let n = rs.num_positive();
    let dim = l + 2 * n;
    let mut alg = ChevalleyAlgebra {
        rs: rs.clone(),
        dim,
        positive_constants: HashMap::new(),
        table: Vec::new(),
    };

    let roots = rs.positive_roots().to_vec();
    for (xi_idx, xi) in roots.iter().enumerate() {
        if xi.height() < 2 {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..xi_idx)
            .filter_map(|a| {
                let rest: Vec<i64> = xi.0.iter().zip(&roots[a].0).map(|(x, y)| x - y).collect();
                rs.positive_index(&rest).filter(|&b| a < b).map(|b| (a, b))
            })
            .collect();
        let (alpha, beta) = pairs[0];
        // p = max k with beta - k alpha a root
        let mut p = 0;
        let mut probe = roots[beta].0.clone();
        loop {
            for (c, a) in probe.iter_mut().zip(&roots[alpha].0) {
                *c -= a;
            }
            if rs.is_root(&probe) {
                p += 1;
            } else {
                break;
            }
        }
        let n_ab = p + 1;
        alg.positive_constants.insert((alpha, beta), n_ab);

        let sr = |idx: usize, positive: bool| SignedRoot { positive, idx };
        let xi_norm = rs.inner(&xi.0, &xi.0);
        let ma = sr(alpha, false);
        let mb = sr(beta, false);
        for &(zeta, eta) in &pairs[1..] {
            let z = sr(zeta, true);
            let e = sr(eta, true);
            // N_{z,e}N_{-a,-b}/(xi,xi) + N_{e,-a}N_{z,-b}/(e-a,e-a) + N_{-a,z}N_{e,-b}/(z-a,z-a) = 0
            let mut rhs_num = 0i64;
            let mut rhs_den = 1i64;
            let mut add_term = |num: i64, den: i64| {
                // rhs -= num/den
                rhs_num = rhs_num * den - num * rhs_den;
                rhs_den *= den;
            };
            if let Some(ea) = alg.add_roots(e, ma) {
                add_term(alg.n_or_zero(e, ma) * alg.n_or_zero(z, mb), alg.norm(ea));
            }
            if let Some(za) = alg.add_roots(z, ma) {
                add_term(alg.n_or_zero(ma, z) * alg.n_or_zero(e, mb), alg.norm(za));
            }
            // N_{-a,-b} = -N_{a,b}
            let value = checked_ratio(rhs_num * xi_norm, rhs_den * -n_ab);
            alg.positive_constants.insert((zeta, eta), value);
        }
    }

    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            table[i][j] = basis_bracket_value(&alg, i, j);
        }
    }
    alg.table = table;
    alg
}

fn basis_bracket_value(alg: &ChevalleyAlgebra, i: usize, j: usize) -> SparseVec {
    use BasisElement::*;
    let rs = &alg.rs;
    let root = |r: usize| &rs.positive_roots()[r].0;
    match (alg.element(i), alg.element(j)) {
        (Cartan(_), Cartan(_)) => vec![],
        (Cartan(a), Raising(r)) => nonzero(j, rs.pairing(root(r), a)),
        (Cartan(a), Lowering(r)) => nonzero(j, -rs.pairing(root(r), a)),
        (Raising(_) | Lowering(_), Cartan(_)) => negate(basis_bracket_value(alg, j, i)),
        (Raising(r), Lowering(s)) | (Lowering(s), Raising(r)) if r == s => {
            // [x_r, y_r] = h_r = sum_k c_k (a_k,a_k)/(r,r) h_k
            let c = root(r);
            let rr = rs.inner(c, c);
            let h: SparseVec = (0..rs.rank())
                .filter(|&k| c[k] != 0)
                .map(|k| (k, checked_ratio(c[k] * rs.simple_norm(k), rr)))
                .collect();
            if matches!(alg.element(i), Raising(_)) {
                h
            } else {
                negate(h)
            }
        }
        _ => {
            let wi = alg.weight_of(i);
            let wj = alg.weight_of(j);
            let sum: Vec<i64> = wi.iter().zip(&wj).map(|(a, b)| a + b).collect();
            let Some(target) = alg.signed(&sum) else {
                return vec![];
            };
            let a = alg.signed(&wi).expect("root");
            let b = alg.signed(&wj).expect("root");
            let k = if target.positive {
                alg.raising_index(target.idx)
            } else {
                alg.lowering_index(target.idx)
            };
            nonzero(k, alg.n_signed(a, b))
        }
    }
}

fn nonzero(idx: usize, v: i64) -> SparseVec {
    if v == 0 {
        vec![]
    } else {
        vec![(idx, v)]
    }
}

fn negate(v: SparseVec) -> SparseVec {
    v.into_iter().map(|(k, c)| (k, -c)).collect()
}

pub fn bracket(alg: &ChevalleyAlgebra, a: &LieElement, b: &LieElement) -> Result<LieElement, ChevalleyError> {
    alg.bracket(a, b)
}

/// `exp(ad a)` as a finite series; fails if `ad a` is not nilpotent.
pub fn exp_ad(alg: &ChevalleyAlgebra, a: &LieElement) -> Result<AdOperator, ChevalleyError> {
    let x = alg.ad(a)?.matrix;
    let dim = alg.dim();
    let mut sum = RationalMatrix::identity(dim);
    let mut term = RationalMatrix::identity(dim);
    for k in 1..=dim + 1 {
        term = (&term * &x).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero() {
            return Ok(AdOperator { matrix: sum, kind: OperatorKind::GroupElement });
        }
        sum = &sum + &term;
    }
    Err(ChevalleyError::NotNilpotent)
}

/// One factor `exp(t ad e)` of a group word, `e` a root vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordFactor {
    pub basis_index: usize,
    pub t: i64,
}

/// A product of unipotent exponentials `exp(t_1 ad e_1) ... exp(t_m ad e_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWord {
    pub factors: Vec<WordFactor>,
}

/// Dense integer matrix used for group elements and their row blocks.
pub type IntRows = Vec<Vec<BigInt>>;

/// Cache of divided powers per root vector.
pub struct ExpCache<'a> {
    alg: &'a ChevalleyAlgebra,
    powers: HashMap<usize, Vec<Vec<(usize, usize, i64)>>>,
}

impl<'a> ExpCache<'a> {
    pub fn new(alg: &'a ChevalleyAlgebra) -> Self {
        Self { alg, powers: HashMap::new() }
    }

    fn powers(&mut self, idx: usize) -> &Vec<Vec<(usize, usize, i64)>> {
        let alg = self.alg;
        self.powers.entry(idx).or_insert_with(|| alg.divided_powers(idx))
    }

    /// `rows * exp(t ad e)`, in place.
    pub fn right_multiply(&mut self, rows: &mut IntRows, f: WordFactor) {
        if f.t == 0 {
            return;
        }
        let powers = self.powers(f.basis_index).clone();
        let base = rows.clone();
        let mut tk = BigInt::one();
        let t = BigInt::from(f.t);
        for p in &powers {
            tk *= &t;
            for &(r, c, v) in p {
                let coef = &tk * v;
                for (row, src) in rows.iter_mut().zip(&base) {
                    if !src[r].is_zero() {
                        row[c] += &src[r] * &coef;
                    }
                }
            }
        }
    }
}

impl GroupWord {
    /// Random word of `length` pairs `exp(t x_b) exp(s y_b)`, `b` uniform over
    /// positive roots, `t, s` uniform in `[-height, height]`.
    pub fn random(alg: &ChevalleyAlgebra, seed: u64, length: usize, height: i64) -> Result<Self, ChevalleyError> {
        if length == 0 {
            return Err(ChevalleyError::EmptyWord);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = alg.num_positive();
        let mut factors = Vec::with_capacity(2 * length);
        for _ in 0..length {
            let b = rng.gen_range(0..n);
            let t = rng.gen_range(-height..=height);
            let s = rng.gen_range(-height..=height);
            factors.push(WordFactor { basis_index: alg.raising_index(b), t });
            factors.push(WordFactor { basis_index: alg.lowering_index(b), t: s });
        }
        Ok(Self { factors })
    }

    /// The selected rows of the operator matrix, as integers.
    pub fn operator_rows(&self, cache: &mut ExpCache<'_>, rows: &[usize]) -> IntRows {
        let dim = cache.alg.dim();
        let mut out: IntRows = rows
            .iter()
            .map(|&r| {
                let mut v = vec![BigInt::zero(); dim];
                v[r] = BigInt::one();
                v
            })
            .collect();
        for &f in &self.factors {
            cache.right_multiply(&mut out, f);
        }
        out
    }

    pub fn to_operator(&self, alg: &ChevalleyAlgebra) -> AdOperator {
        let mut cache = ExpCache::new(alg);
        let all: Vec<usize> = (0..alg.dim()).collect();
        let rows = self.operator_rows(&mut cache, &all);
        let matrix = RationalMatrix::from_fn(alg.dim(), alg.dim(), |i, j| Rational::from_integer(rows[i][j].clone()));
        AdOperator { matrix, kind: OperatorKind::GroupElement }
    }
}

/// Deterministic random group element; see [`GroupWord::random`].
pub fn random_group_element(
    alg: &ChevalleyAlgebra,
    seed: u64,
    length: usize,
    height: i64,
) -> Result<AdOperator, ChevalleyError> {
    Ok(GroupWord::random(alg, seed, length, height)?.to_operator(alg))
}

//! Matrix models of `SO_{2l+1}`, `Sp_{2l}` and `SO_{2l}` preserving the
//! anti-diagonal form, plus explicit constructions inside them: Levi-module
//! coordinates and their rational invariants, normal forms, transversal
//! Lagrangian triples, the odd-rank `P_{1,l}` triple reduction and cross-ratio
//! certificates of infinitely many orbits.

pub mod cross_ratio;
pub mod dtriple;
pub mod transversal;
pub mod levi;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactlinalg::{bilinear, independent_columns, rat, span_intersection, LinalgError, Rational, RationalMatrix};
use crate::rootsystem::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("no classical model for {family}_{l}")]
    InvalidRank { family: Family, l: usize },
    #[error("{0}")]
    Dimension(String),
    #[error("subspace U{0} is not isotropic")]
    NotIsotropic(usize),
    #[error("subspaces U{0} and U{1} intersect nontrivially")]
    Intersecting(usize, usize),
    #[error("k = {0} is odd: a nondegenerate skew form needs even dimension")]
    OddDimension(usize),
    #[error("point is not generic: {0}")]
    Genericity(String),
    #[error("normalization needs a square root of {0}, which is not rational")]
    SquareClass(String),
    #[error("condition ({0}) of the open set fails")]
    Condition(u8),
    #[error("point is not in the variety: {0}")]
    NotInVariety(String),
    #[error("constructed operator has determinant -1: the subspaces lie in the other orbit component")]
    WrongComponent,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Symmetric,
    Skew,
}

/// `K^dim` with a nondegenerate bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpace {
    pub dim: usize,
    pub gram: RationalMatrix,
    pub kind: FormKind,
}

/// The anti-diagonal matrix with ones.
pub fn antidiagonal(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |i, j| if i + j + 1 == n { rat(1) } else { rat(0) })
}

impl FormSpace {
    pub fn new(gram: RationalMatrix) -> Result<Self, ClassicalError> {
        let kind = if gram.is_symmetric() {
            FormKind::Symmetric
        } else if gram.is_antisymmetric() {
            FormKind::Skew
        } else {
            return Err(ClassicalError::Dimension("form is neither symmetric nor skew".into()));
        };
        if gram.determinant()?.is_zero() {
            return Err(ClassicalError::Dimension("form is degenerate".into()));
        }
        Ok(Self { dim: gram.rows(), gram, kind })
    }

    /// The symmetric form with anti-diagonal matrix `Q`.
    pub fn orthogonal(n: usize) -> Self {
        Self { dim: n, gram: antidiagonal(n), kind: FormKind::Symmetric }
    }

    /// `[[0, Q_l], [-Q_l, 0]]` on `K^{2l}`.
    pub fn symplectic(n: usize) -> Self {
        assert!(n % 2 == 0, "symplectic space of odd dimension");
        let l = n / 2;
        let gram = RationalMatrix::from_fn(n, n, |i, j| {
            if i + j + 1 == n {
                if i < l { rat(1) } else { rat(-1) }
            } else {
                rat(0)
            }
        });
        Self { dim: n, gram, kind: FormKind::Skew }
    }

    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        bilinear(&self.gram, a, b)
    }

    /// `g^T G g = G`.
    pub fn preserves(&self, g: &RationalMatrix) -> bool {
        &(&g.transpose() * &self.gram) * g == self.gram
    }

    pub fn in_lie_algebra(&self, x: &RationalMatrix) -> bool {
        (&(&x.transpose() * &self.gram) + &(&self.gram * x)).is_zero()
    }

    /// Basis `G^{-1} M` with `M` running over elementary antisymmetric
    /// (orthogonal case) or symmetric (symplectic case) matrices.
    pub fn lie_algebra_basis(&self) -> Vec<RationalMatrix> {
        let ginv = self.gram.inverse().expect("nondegenerate form");
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let m = match self.kind {
                    FormKind::Symmetric if i == j => continue,
                    FormKind::Symmetric => RationalMatrix::from_fn(n, n, |a, b| {
                        if (a, b) == (i, j) { rat(1) } else if (a, b) == (j, i) { rat(-1) } else { rat(0) }
                    }),
                    FormKind::Skew => RationalMatrix::from_fn(n, n, |a, b| {
                        if (a, b) == (i, j) || (a, b) == (j, i) { rat(1) } else { rat(0) }
                    }),
                };
                out.push(&ginv * &m);
            }
        }
        out
    }

    /// A random element `G^{-1} M` of the Lie algebra with entries of `M` in
    /// `[-h, h]`.
    pub fn random_lie_element(&self, rng: &mut impl Rng, h: i64) -> RationalMatrix {
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rat(rng.gen_range(-h..=h));
                match self.kind {
                    FormKind::Symmetric => {
                        if i != j {
                            m.set(i, j, v.clone());
                            m.set(j, i, -v);
                        }
                    }
                    FormKind::Skew => {
                        m.set(i, j, v.clone());
                        m.set(j, i, v);
                    }
                }
            }
        }
        &self.gram.inverse().expect("nondegenerate form") * &m
    }

    /// A random group element via the Cayley transform `(I - X)^{-1}(I + X)`
    /// of a random Lie algebra element; lands in the identity component.
    pub fn random_group_element(&self, rng: &mut impl Rng) -> RationalMatrix {
        let id = RationalMatrix::identity(self.dim);
        loop {
            let x = self.random_lie_element(rng, 1);
            if let Ok(inv) = (&id - &x).inverse() {
                let g = &inv * &(&id + &x);
                debug_assert!(self.preserves(&g));
                return g;
            }
        }
    }
}

/// The ambient space and Lie algebra basis for a classical family.
#[derive(Debug, Clone)]
pub struct ClassicalModel {
    pub family: Family,
    pub l: usize,
    pub space: FormSpace,
    pub algebra: Vec<RationalMatrix>,
}

/// `B_l` on `K^{2l+1}`, `C_l` on `K^{2l}` with the skew form, `D_l` on
/// `K^{2l}`; `D_3` is allowed here.
pub fn build_classical_model(family: Family, l: usize) -> Result<ClassicalModel, ClassicalError> {
    let space = match family {
        Family::B if l >= 2 => FormSpace::orthogonal(2 * l + 1),
        Family::C if l >= 2 => FormSpace::symplectic(2 * l),
        Family::D if l >= 3 => FormSpace::orthogonal(2 * l),
        _ => return Err(ClassicalError::InvalidRank { family, l }),
    };
    let algebra = space.lie_algebra_basis();
    Ok(ClassicalModel { family, l, space, algebra })
}

/// Column span in `K^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
}

impl Subspace {
    /// Keeps a maximal independent set of the given columns.
    pub fn new(m: &RationalMatrix) -> Self {
        Self::from_vectors(m.rows(), &m.columns())
    }

    pub fn from_vectors(ambient: usize, vecs: &[Vec<Rational>]) -> Self {
        Self { ambient, basis: independent_columns(ambient, vecs) }
    }

    /// Span of standard basis vectors (0-based indices).
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let vecs: Vec<Vec<Rational>> = idx.iter().map(|&i| unit(ambient, i)).collect();
        Self::from_vectors(ambient, &vecs)
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: RationalMatrix::zeros(ambient, 0) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut v = self.vectors();
        v.extend(other.vectors());
        Self::from_vectors(self.ambient, &v)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        Self { ambient: self.ambient, basis: span_intersection(&self.basis, &other.basis) }
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        let mut vecs = self.vectors();
        vecs.push(v.to_vec());
        RationalMatrix::from_columns(self.ambient, &vecs).rank() == self.dim()
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    pub fn transform(&self, g: &RationalMatrix) -> Self {
        Self::new(&(g * &self.basis))
    }

    pub fn is_isotropic(&self, form: &FormSpace) -> bool {
        (&(&self.basis.transpose() * &form.gram) * &self.basis).is_zero()
    }

    /// `{x : (v, x) = 0 for all v in self}`.
    pub fn orthogonal_complement(&self, form: &FormSpace) -> Self {
        if self.dim() == 0 {
            return Self::coordinate(self.ambient, &(0..self.ambient).collect::<Vec<_>>());
        }
        let m = &self.basis.transpose() * &form.gram;
        Self::from_vectors(self.ambient, &m.kernel_basis())
    }

    /// Coordinates of `v` in this basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.basis.solve(v).ok().filter(|c| &self.basis.mul_vec(c) == v)
    }

    /// Some basis vector not in `other`.
    pub fn vector_outside(&self, other: &Self) -> Option<Vec<Rational>> {
        self.vectors().into_iter().find(|v| !other.contains_vector(v))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); n];
    v[i] = rat(1);
    v
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn scale_vec(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * c).collect()
}

pub(crate) fn axpy(c: &Rational, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| c * a + b).collect()
}

/// Greedy symplectic Gram-Schmidt for a (possibly degenerate) skew form `g`:
/// returns pairs `(e, f)` with `(e, f) = 1`, mutually orthogonal, and the
/// projected leftovers, which span the radical part of the pool.
pub fn symplectic_pairs(
    g: &RationalMatrix,
    mut pool: Vec<Vec<Rational>>,
) -> (Vec<(Vec<Rational>, Vec<Rational>)>, Vec<Vec<Rational>>) {
    let mut pairs = Vec::new();
    loop {
        let found = (0..pool.len()).find_map(|i| {
            (i + 1..pool.len()).find(|&j| !bilinear(g, &pool[i], &pool[j]).is_zero()).map(|j| (i, j))
        });
        let Some((i, j)) = found else { break };
        let e = pool[i].clone();
        let f = scale_vec(&pool[j], &bilinear(g, &e, &pool[j]).recip());
        pool.remove(j);
        pool.remove(i);
        for y in pool.iter_mut() {
            let yf = bilinear(g, y, &f);
            let ye = bilinear(g, y, &e);
            *y = axpy(&ye, &f, &axpy(&-yf, &e, y));
        }
        pool.retain(|v| !is_zero_vec(v));
        pairs.push((e, f));
    }
    (pairs, pool)
}

/// Columns `m_1, .., m_{2m}` with `m_a^T J m_b = J_ab` for the block form
/// `J = diag([[0,1],[-1,0]], ..)`, where column `slot` (0 or 1) is `v`.
pub fn symplectic_basis_with(j: &RationalMatrix, slot: usize, v: &[Rational]) -> Result<RationalMatrix, ClassicalError> {
    let n = j.rows();
    if is_zero_vec(v) {
        return Err(ClassicalError::Degenerate("zero vector cannot start a symplectic basis".into()));
    }
    let x = (0..n)
        .map(|i| unit(n, i))
        .find(|x| !bilinear(j, x, v).is_zero())
        .expect("nondegenerate form pairs every nonzero vector");
    let (b1, b2) = if slot == 0 {
        let c = bilinear(j, v, &x);
        (v.to_vec(), scale_vec(&x, &c.recip()))
    } else {
        let c = bilinear(j, &x, v);
        (scale_vec(&x, &c.recip()), v.to_vec())
    };
    let pool: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let y = unit(n, i);
            let yf = bilinear(j, &y, &b2);
            let ye = bilinear(j, &y, &b1);
            axpy(&ye, &b2, &axpy(&-yf, &b1, &y))
        })
        .filter(|y| !is_zero_vec(y))
        .collect();
    let (rest, _) = symplectic_pairs(j, pool);
    let mut cols = vec![b1, b2];
    for (e, f) in rest {
        cols.push(e);
        cols.push(f);
    }
    let m = RationalMatrix::from_columns(n, &cols);
    debug_assert_eq!(&(&m.transpose() * j) * &m, *j);
    Ok(m)
}

/// The skew block form `diag([[0,1],[-1,0]], ..)` of even size.
pub fn standard_skew(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            rat(1)
        } else if i % 2 == 1 && j + 1 == i {
            rat(-1)
        } else {
            rat(0)
        }
    })
}

/// Random invertible `n x n` integer matrix with entries in `[-3, 3]`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    loop {
        let m = RationalMatrix::from_fn(n, n, |_, _| rat(rng.gen_range(-3..=3)));
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Random torus scalar from `{±1, ±2, ±1/2}`.
pub fn random_torus_scalar(rng: &mut impl Rng) -> Rational {
    let base = match rng.gen_range(0..3) {
        0 => rat(1),
        1 => rat(2),
        _ => Rational::one() / rat(2),
    };
    if rng.gen_bool(0.5) { base } else { -base }
}

//! Coordinates on `u^-` for the classical cases with an interesting Levi
//! action, embedded as strictly block-lower matrices of the matrix models.
//!
//! An L-element is a pair `(A, torus)` with `A` in `GL_m`.  Components
//! transform as follows (`t`, `s` the torus scalars):
//!
//! | case          | blocks                 | components                                                          |
//! |---------------|------------------------|---------------------------------------------------------------------|
//! | `B_{1,l}`     | `1, l-1, 1, l-1, 1`    | `t A^-T u1, t u2, A u3, t A u4, A u5 A^T`                           |
//! | `C_{1,l}`     | `1, l-1, l-1, 1`       | `t A^-T u1, t A u2, A u3 A^T, t^2 u4`                               |
//! | `D_{l-1,l}`   | `l-1, 2, l-1`          | `A u1 A^T, s A u2, s^-1 A u3`                                       |
//! | `D_{1,l}`     | `1, l-1, l-1, 1`       | `A u1 A^T, t A u2, t A^-T u3`                                       |
//! | `D_{1,l-1,l}` | `1, l-2, 2, l-2, 1`    | `t A^-T u1, ts u2, s A u3, t s^-1 u4, s^-1 A u5, t A u6, A u7 A^T`  |
//!
//! The group matrix of `(A, t)` is block diagonal with `A^-T` in the second
//! block and `Q A Q` in its mirror, `t^-1` and `t` in the corner blocks, and
//! `diag(s, s^-1)` in a middle block of size two.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, Serializer};
use serde::Serialize as DeriveSerialize;

use super::{antidiagonal, random_invertible, random_torus_scalar, standard_skew, symplectic_basis_with, symplectic_pairs, unit, ClassicalError, FormSpace};
use crate::exactlinalg::{
    dot, fmt_rational, rat, rational_sqrt, serialize_rational, serialize_rationals, Rational, RationalMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, DeriveSerialize)]
pub enum LeviCase {
    #[serde(rename = "B_{1,l}")]
    B1L,
    #[serde(rename = "C_{1,l}")]
    C1L,
    #[serde(rename = "D_{l-1,l}")]
    DLastTwo,
    #[serde(rename = "D_{1,l}")]
    D1L,
    #[serde(rename = "D_{1,l-1,l}")]
    D1LastTwo,
}

impl fmt::Display for LeviCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LeviCase::B1L => "B_{1,l}",
            LeviCase::C1L => "C_{1,l}",
            LeviCase::DLastTwo => "D_{l-1,l}",
            LeviCase::D1L => "D_{1,l}",
            LeviCase::D1LastTwo => "D_{1,l-1,l}",
        };
        f.write_str(s)
    }
}

impl FromStr for LeviCase {
    type Err = ClassicalError;
    /// Accepts `B`, `C`, `B_{1,l}`, `Dl-1,l`, `D1,l`, `D1,l-1,l` and similar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| !"_{} ".contains(*c)).collect::<String>().to_ascii_lowercase();
        match key.as_str() {
            "b" | "b1,l" | "b1l" => Ok(LeviCase::B1L),
            "c" | "c1,l" | "c1l" => Ok(LeviCase::C1L),
            "dl-1,l" | "d-odd" | "dodd" => Ok(LeviCase::DLastTwo),
            "d1,l" | "d1l" => Ok(LeviCase::D1L),
            "d1,l-1,l" | "d1l-1l" | "d-triple" => Ok(LeviCase::D1LastTwo),
            _ => Err(ClassicalError::Unsupported(format!("unknown Levi case {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Scalar,
    Vector(usize),
    Symmetric(usize),
    Antisymmetric(usize),
}

impl LeviCase {
    pub const ALL: [LeviCase; 5] = [LeviCase::B1L, LeviCase::C1L, LeviCase::DLastTwo, LeviCase::D1L, LeviCase::D1LastTwo];

    pub fn min_l(self) -> usize {
        match self {
            LeviCase::B1L | LeviCase::C1L => 2,
            _ => 4,
        }
    }

    /// Size of the `GL` block.
    pub fn gl_size(self, l: usize) -> usize {
        match self {
            LeviCase::D1LastTwo => l - 2,
            _ => l - 1,
        }
    }

    pub fn torus_rank(self) -> usize {
        if self == LeviCase::D1LastTwo { 2 } else { 1 }
    }

    fn shapes(self, l: usize) -> Vec<Shape> {
        use Shape::*;
        let m = self.gl_size(l);
        match self {
            LeviCase::B1L => vec![Vector(m), Scalar, Vector(m), Vector(m), Antisymmetric(m)],
            LeviCase::C1L => vec![Vector(m), Vector(m), Symmetric(m), Scalar],
            LeviCase::DLastTwo | LeviCase::D1L => vec![Antisymmetric(m), Vector(m), Vector(m)],
            LeviCase::D1LastTwo => vec![Vector(m), Scalar, Vector(m), Scalar, Vector(m), Vector(m), Antisymmetric(m)],
        }
    }

    pub fn blocks(self, l: usize) -> Vec<usize> {
        match self {
            LeviCase::B1L => vec![1, l - 1, 1, l - 1, 1],
            LeviCase::C1L | LeviCase::D1L => vec![1, l - 1, l - 1, 1],
            LeviCase::DLastTwo => vec![l - 1, 2, l - 1],
            LeviCase::D1LastTwo => vec![1, l - 2, 2, l - 2, 1],
        }
    }

    pub fn form(self, l: usize) -> FormSpace {
        match self {
            LeviCase::B1L => FormSpace::orthogonal(2 * l + 1),
            LeviCase::C1L => FormSpace::symplectic(2 * l),
            _ => FormSpace::orthogonal(2 * l),
        }
    }

    /// Dimension of `u^-`.
    pub fn dim(self, l: usize) -> usize {
        self.shapes(l)
            .iter()
            .map(|s| match *s {
                Shape::Scalar => 1,
                Shape::Vector(n) => n,
                Shape::Symmetric(n) => n * (n + 1) / 2,
                Shape::Antisymmetric(n) => n * (n - 1) / 2,
            })
            .sum()
    }

    pub fn invariant_formula(self) -> Option<&'static str> {
        match self {
            LeviCase::B1L => Some("(u1,u3)^2 / (u1,u4)"),
            LeviCase::C1L => Some("(u1,u2) / u4"),
            LeviCase::DLastTwo => Some("u2^T u1^{-1} u3"),
            LeviCase::D1L => None,
            LeviCase::D1LastTwo => Some("(u1,u3) / u2"),
        }
    }

    pub fn default_l(self) -> usize {
        if self == LeviCase::DLastTwo { 5 } else { 4 }
    }

    fn check_l(self, l: usize) -> Result<(), ClassicalError> {
        if l < self.min_l() {
            return Err(ClassicalError::Unsupported(format!("{self} needs l >= {}", self.min_l())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Scalar(Rational),
    Vector(Vec<Rational>),
    Matrix(RationalMatrix),
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Component::Scalar(q) => serialize_rational(q, s),
            Component::Vector(v) => serialize_rationals(v, s),
            Component::Matrix(m) => m.serialize(s),
        }
    }
}

impl Component {
    pub fn scalar(&self) -> &Rational {
        match self {
            Component::Scalar(q) => q,
            _ => panic!("component is not a scalar"),
        }
    }

    pub fn vector(&self) -> &[Rational] {
        match self {
            Component::Vector(v) => v,
            _ => panic!("component is not a vector"),
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        match self {
            Component::Matrix(m) => m,
            _ => panic!("component is not a matrix"),
        }
    }
}

/// A point of `u^-` in the case's coordinates; `components[k]` is `u_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, DeriveSerialize)]
pub struct LeviPoint {
    pub case: LeviCase,
    pub l: usize,
    pub components: Vec<Component>,
}

/// `(A, torus)` acting on `u^-` as in the module table.
#[derive(Debug, Clone, PartialEq, Eq, DeriveSerialize)]
pub struct LeviElement {
    pub a: RationalMatrix,
    #[serde(serialize_with = "serialize_rationals")]
    pub torus: Vec<Rational>,
}

impl LeviElement {
    pub fn identity(case: LeviCase, l: usize) -> Self {
        Self { a: RationalMatrix::identity(case.gl_size(l)), torus: vec![rat(1); case.torus_rank()] }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { a: &self.a * &other.a, torus: self.torus.iter().zip(&other.torus).map(|(x, y)| x * y).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.a == RationalMatrix::identity(self.a.rows()) && self.torus.iter().all(One::is_one)
    }

    pub fn random(case: LeviCase, l: usize, rng: &mut impl Rng) -> Self {
        Self {
            a: random_invertible(rng, case.gl_size(l)),
            torus: (0..case.torus_rank()).map(|_| random_torus_scalar(rng)).collect(),
        }
    }
}

fn col(v: &[Rational]) -> RationalMatrix {
    RationalMatrix::from_columns(v.len(), &[v.to_vec()])
}

fn row(v: &[Rational]) -> RationalMatrix {
    RationalMatrix::from_rows(vec![v.to_vec()])
}

fn scalar_block(q: &Rational) -> RationalMatrix {
    RationalMatrix::from_rows(vec![vec![q.clone()]])
}

fn offsets(blocks: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for b in blocks {
        out.push(out.last().unwrap() + b);
    }
    out
}

fn place(x: &mut RationalMatrix, off: &[usize], bi: usize, bj: usize, m: &RationalMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            x.set(off[bi] + i, off[bj] + j, m.get(i, j).clone());
        }
    }
}

fn block(x: &RationalMatrix, blocks: &[usize], bi: usize, bj: usize) -> RationalMatrix {
    let off = offsets(blocks);
    RationalMatrix::from_fn(blocks[bi], blocks[bj], |i, j| x.get(off[bi] + i, off[bj] + j).clone())
}

fn block_diagonal(parts: &[RationalMatrix]) -> RationalMatrix {
    let n: usize = parts.iter().map(RationalMatrix::rows).sum();
    let mut out = RationalMatrix::zeros(n, n);
    let mut o = 0;
    for p in parts {
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                out.set(o + i, o + j, p.get(i, j).clone());
            }
        }
        o += p.rows();
    }
    out
}

fn inv_transpose(a: &RationalMatrix) -> RationalMatrix {
    a.inverse().expect("L-element has invertible GL block").transpose()
}

fn congruence(a: &RationalMatrix, m: &RationalMatrix) -> RationalMatrix {
    &(a * m) * &a.transpose()
}

impl LeviPoint {
    pub fn new(case: LeviCase, l: usize, components: Vec<Component>) -> Result<Self, ClassicalError> {
        case.check_l(l)?;
        let shapes = case.shapes(l);
        if shapes.len() != components.len() {
            return Err(ClassicalError::Dimension(format!("{case} has {} components, got {}", shapes.len(), components.len())));
        }
        for (k, (s, c)) in shapes.iter().zip(&components).enumerate() {
            let ok = match (s, c) {
                (Shape::Scalar, Component::Scalar(_)) => true,
                (Shape::Vector(n), Component::Vector(v)) => v.len() == *n,
                (Shape::Symmetric(n), Component::Matrix(m)) => m.shape() == (*n, *n) && m.is_symmetric(),
                (Shape::Antisymmetric(n), Component::Matrix(m)) => m.shape() == (*n, *n) && m.is_antisymmetric(),
                _ => false,
            };
            if !ok {
                return Err(ClassicalError::Dimension(format!("component u{} of {case} has the wrong shape", k + 1)));
            }
        }
        Ok(Self { case, l, components })
    }

    pub fn u(&self, k: usize) -> &Component {
        &self.components[k - 1]
    }

    /// Random integer point with entries in `[-3, 3]`.
    pub fn random(case: LeviCase, l: usize, rng: &mut impl Rng) -> Self {
        let mut entry = || rat(rng.gen_range(-3..=3));
        let components = case
            .shapes(l)
            .into_iter()
            .map(|s| match s {
                Shape::Scalar => Component::Scalar(entry()),
                Shape::Vector(n) => Component::Vector((0..n).map(|_| entry()).collect()),
                Shape::Symmetric(n) | Shape::Antisymmetric(n) => {
                    let mut m = RationalMatrix::zeros(n, n);
                    for i in 0..n {
                        for j in i..n {
                            if i == j && matches!(s, Shape::Antisymmetric(_)) {
                                continue;
                            }
                            let v = entry();
                            let w = if matches!(s, Shape::Antisymmetric(_)) { -v.clone() } else { v.clone() };
                            m.set(i, j, v);
                            m.set(j, i, w);
                        }
                    }
                    Component::Matrix(m)
                }
            })
            .collect();
        Self { case, l, components }
    }

    /// The matrix of this point in the Lie algebra of the model.
    pub fn to_matrix(&self) -> RationalMatrix {
        let (case, l) = (self.case, self.l);
        let blocks = case.blocks(l);
        let off = offsets(&blocks);
        let form = case.form(l);
        let n = form.dim;
        let q = antidiagonal(case.gl_size(l));
        let mut own = RationalMatrix::zeros(n, n);
        let mut paired = RationalMatrix::zeros(n, n);
        let u = |k: usize| &self.components[k - 1];
        match case {
            LeviCase::B1L => {
                place(&mut paired, &off, 1, 0, &col(u(1).vector()));
                place(&mut paired, &off, 2, 0, &scalar_block(u(2).scalar()));
                place(&mut paired, &off, 2, 1, &row(u(3).vector()));
                place(&mut paired, &off, 3, 0, &(&q * &col(u(4).vector())));
                place(&mut own, &off, 3, 1, &(&q * u(5).matrix()));
            }
            LeviCase::C1L => {
                place(&mut paired, &off, 1, 0, &col(u(1).vector()));
                place(&mut paired, &off, 2, 0, &(&q * &col(u(2).vector())));
                place(&mut own, &off, 2, 1, &(&q * u(3).matrix()));
                place(&mut own, &off, 3, 0, &scalar_block(u(4).scalar()));
            }
            LeviCase::DLastTwo => {
                let rows = RationalMatrix::from_rows(vec![u(2).vector().to_vec(), u(3).vector().to_vec()]);
                place(&mut paired, &off, 1, 0, &rows);
                place(&mut own, &off, 2, 0, &(&q * u(1).matrix()));
            }
            LeviCase::D1L => {
                place(&mut paired, &off, 1, 0, &col(u(3).vector()));
                place(&mut paired, &off, 2, 0, &(&q * &col(u(2).vector())));
                place(&mut own, &off, 2, 1, &(&q * u(1).matrix()));
            }
            LeviCase::D1LastTwo => {
                place(&mut paired, &off, 1, 0, &col(u(1).vector()));
                place(&mut paired, &off, 2, 0, &col(&[u(2).scalar().clone(), u(4).scalar().clone()]));
                place(&mut paired, &off, 3, 0, &(&q * &col(u(6).vector())));
                let rows = RationalMatrix::from_rows(vec![u(3).vector().to_vec(), u(5).vector().to_vec()]);
                place(&mut paired, &off, 2, 1, &rows);
                place(&mut own, &off, 3, 1, &(&q * u(7).matrix()));
            }
        }
        // the mirror image -G^{-1} Y^T G completes `paired` to a Lie algebra element
        let ginv = form.gram.inverse().expect("nondegenerate");
        let mirror = -(&(&ginv * &paired.transpose()) * &form.gram);
        &(&own + &paired) + &mirror
    }

    /// Reads the components back from a matrix of `u^-`.
    pub fn from_matrix(case: LeviCase, l: usize, x: &RationalMatrix) -> Result<Self, ClassicalError> {
        case.check_l(l)?;
        let blocks = case.blocks(l);
        let q = antidiagonal(case.gl_size(l));
        let b = |i, j| block(x, &blocks, i, j);
        let colv = |m: RationalMatrix| m.column(0);
        let comps = match case {
            LeviCase::B1L => vec![
                Component::Vector(colv(b(1, 0))),
                Component::Scalar(b(2, 0).get(0, 0).clone()),
                Component::Vector(b(2, 1).row(0).to_vec()),
                Component::Vector(colv(&q * &b(3, 0))),
                Component::Matrix(&q * &b(3, 1)),
            ],
            LeviCase::C1L => vec![
                Component::Vector(colv(b(1, 0))),
                Component::Vector(colv(&q * &b(2, 0))),
                Component::Matrix(&q * &b(2, 1)),
                Component::Scalar(b(3, 0).get(0, 0).clone()),
            ],
            LeviCase::DLastTwo => {
                let r = b(1, 0);
                vec![
                    Component::Matrix(&q * &b(2, 0)),
                    Component::Vector(r.row(0).to_vec()),
                    Component::Vector(r.row(1).to_vec()),
                ]
            }
            LeviCase::D1L => vec![
                Component::Matrix(&q * &b(2, 1)),
                Component::Vector(colv(&q * &b(2, 0))),
                Component::Vector(colv(b(1, 0))),
            ],
            LeviCase::D1LastTwo => {
                let c = b(2, 0);
                let r = b(2, 1);
                vec![
                    Component::Vector(colv(b(1, 0))),
                    Component::Scalar(c.get(0, 0).clone()),
                    Component::Vector(r.row(0).to_vec()),
                    Component::Scalar(c.get(1, 0).clone()),
                    Component::Vector(r.row(1).to_vec()),
                    Component::Vector(colv(&q * &b(3, 0))),
                    Component::Matrix(&q * &b(3, 1)),
                ]
            }
        };
        Self::new(case, l, comps)
    }

    /// The action of an L-element through the module table.
    pub fn act(&self, g: &LeviElement) -> Self {
        let a = &g.a;
        let ait = inv_transpose(a);
        let t = &g.torus[0];
        let mv = |m: &RationalMatrix, c: &Rational, k: usize| {
            Component::Vector(m.mul_vec(self.components[k - 1].vector()).iter().map(|x| x * c).collect())
        };
        let sc = |c: Rational, k: usize| Component::Scalar(c * self.components[k - 1].scalar());
        let cong = |k: usize| Component::Matrix(congruence(a, self.components[k - 1].matrix()));
        let one = rat(1);
        let components = match self.case {
            LeviCase::B1L => vec![mv(&ait, t, 1), sc(t.clone(), 2), mv(a, &one, 3), mv(a, t, 4), cong(5)],
            LeviCase::C1L => vec![mv(&ait, t, 1), mv(a, t, 2), cong(3), sc(t * t, 4)],
            LeviCase::DLastTwo => vec![cong(1), mv(a, t, 2), mv(a, &t.recip(), 3)],
            LeviCase::D1L => vec![cong(1), mv(a, t, 2), mv(&ait, t, 3)],
            LeviCase::D1LastTwo => {
                let s = &g.torus[1];
                vec![
                    mv(&ait, t, 1),
                    sc(t * s, 2),
                    mv(a, s, 3),
                    sc(t / s, 4),
                    mv(a, &s.recip(), 5),
                    mv(a, t, 6),
                    cong(7),
                ]
            }
        };
        Self { case: self.case, l: self.l, components }
    }

    /// The action through conjugation by the group matrix.
    pub fn act_by_conjugation(&self, g: &LeviElement) -> Self {
        let m = group_matrix(self.case, self.l, g);
        let x = &(&m * &self.to_matrix()) * &m.inverse().expect("group element");
        Self::from_matrix(self.case, self.l, &x).expect("same case and rank")
    }

    /// Value of the case's rational invariant, `None` on the denominator locus.
    pub fn invariant(&self) -> Result<Option<Rational>, ClassicalError> {
        let u = |k: usize| &self.components[k - 1];
        Ok(match self.case {
            LeviCase::B1L => {
                let num = dot(u(1).vector(), u(3).vector());
                let den = dot(u(1).vector(), u(4).vector());
                (!den.is_zero()).then(|| &num * &num / den)
            }
            LeviCase::C1L => {
                let den = u(4).scalar();
                (!den.is_zero()).then(|| dot(u(1).vector(), u(2).vector()) / den)
            }
            LeviCase::DLastTwo => {
                if self.l % 2 == 0 {
                    return Err(ClassicalError::Unsupported("u1 is invertible only for odd l".into()));
                }
                u(1).matrix().inverse().ok().map(|inv| dot(u(2).vector(), &inv.mul_vec(u(3).vector())))
            }
            LeviCase::D1L => return Err(ClassicalError::Unsupported("D_{1,l} has no rational invariant".into())),
            LeviCase::D1LastTwo => {
                let den = u(2).scalar();
                (!den.is_zero()).then(|| dot(u(1).vector(), u(3).vector()) / den)
            }
        })
    }
}

/// The block-diagonal matrix of an L-element in the model.
pub fn group_matrix(case: LeviCase, l: usize, g: &LeviElement) -> RationalMatrix {
    let q = antidiagonal(case.gl_size(l));
    let a_low = inv_transpose(&g.a);
    let a_high = &(&q * &g.a) * &q;
    let t = &g.torus[0];
    let sc = |x: Rational| scalar_block(&x);
    match case {
        LeviCase::B1L => block_diagonal(&[sc(t.recip()), a_low, sc(rat(1)), a_high, sc(t.clone())]),
        LeviCase::C1L | LeviCase::D1L => block_diagonal(&[sc(t.recip()), a_low, a_high, sc(t.clone())]),
        LeviCase::DLastTwo => block_diagonal(&[a_low, RationalMatrix::diagonal(&[t.clone(), t.recip()]), a_high]),
        LeviCase::D1LastTwo => {
            let s = &g.torus[1];
            block_diagonal(&[sc(t.recip()), a_low, RationalMatrix::diagonal(&[s.clone(), s.recip()]), a_high, sc(t.clone())])
        }
    }
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct InvariantSample {
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub transformed: Rational,
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct InvariantReport {
    pub case: LeviCase,
    pub l: usize,
    pub formula: &'static str,
    pub trials: usize,
    pub all_equal: bool,
    /// Points discarded because the denominator vanished.
    pub resampled: usize,
    pub samples: Vec<InvariantSample>,
    #[serde(serialize_with = "serialize_rationals")]
    pub witness: Vec<Rational>,
}

impl InvariantReport {
    pub fn non_constant(&self) -> bool {
        self.witness.len() == 2
    }
}

/// Checks `f(g.u) = f(u)` for random L-elements acting by conjugation in the
/// matrix model, and looks for two points with different values.
pub fn verify_rational_invariant(case: LeviCase, l: usize, seed: u64, trials: usize) -> Result<InvariantReport, ClassicalError> {
    case.check_l(l)?;
    let formula = case
        .invariant_formula()
        .ok_or_else(|| ClassicalError::Unsupported(format!("{case} has no rational invariant")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(trials);
    let mut resampled = 0;
    let mut all_equal = true;
    for _ in 0..trials {
        let (u, value) = loop {
            let u = LeviPoint::random(case, l, &mut rng);
            if let Some(v) = u.invariant()? {
                break (u, v);
            }
            resampled += 1;
            if resampled > 100 * trials.max(10) {
                return Err(ClassicalError::Degenerate("denominator vanishes at every sampled point".into()));
            }
        };
        let g = LeviElement::random(case, l, &mut rng);
        let moved = u.act_by_conjugation(&g);
        let transformed = moved.invariant()?.unwrap_or_else(|| {
            all_equal = false;
            rat(0)
        });
        all_equal &= transformed == value;
        samples.push(InvariantSample { value, transformed });
    }
    let mut witness = Vec::new();
    if let Some(first) = samples.first() {
        if let Some(other) = samples.iter().find(|s| s.value != first.value) {
            witness = vec![first.value.clone(), other.value.clone()];
        }
    }
    Ok(InvariantReport { case, l, formula, trials, all_equal, resampled, samples, witness })
}

/// `diag(0, J, .., J)` of size `l - 1`, `J = [[0,1],[-1,0]]`.
pub fn skew_normal_form(l: usize) -> RationalMatrix {
    let n = l - 1;
    let tail = standard_skew(n - 1);
    RationalMatrix::from_fn(n, n, |i, j| if i == 0 || j == 0 { rat(0) } else { tail.get(i - 1, j - 1).clone() })
}

/// `(R, e_1, e_1 + e_2)`.
pub fn canonical_point(case: LeviCase, l: usize) -> LeviPoint {
    let n = l - 1;
    let mut u3 = unit(n, 0);
    u3[1] = rat(1);
    LeviPoint {
        case,
        l,
        components: vec![Component::Matrix(skew_normal_form(l)), Component::Vector(unit(n, 0)), Component::Vector(u3)],
    }
}

fn check_canonicalizable(u: &LeviPoint) -> Result<Vec<Rational>, ClassicalError> {
    if !matches!(u.case, LeviCase::DLastTwo | LeviCase::D1L) || u.l % 2 != 0 {
        return Err(ClassicalError::Unsupported(format!("normal form is implemented for {{D_{{l-1,l}}, D_{{1,l}}}} with l even, got {} l={}", u.case, u.l)));
    }
    let (u1, u2, u3) = (u.u(1).matrix(), u.u(2).vector(), u.u(3).vector());
    if u1.rank() != u.l - 2 {
        return Err(ClassicalError::Genericity("u1 does not have rank l-2".into()));
    }
    let kappa = u1.kernel_basis().pop().expect("corank one");
    if dot(&kappa, u2).is_zero() {
        return Err(ClassicalError::Genericity("u2 lies in (Ker u1)^perp".into()));
    }
    match u.case {
        LeviCase::DLastTwo => {
            if dot(&kappa, u3).is_zero() {
                return Err(ClassicalError::Genericity("u3 lies in (Ker u1)^perp".into()));
            }
            if RationalMatrix::from_columns(u2.len(), &[u2.to_vec(), u3.to_vec()]).rank() < 2 {
                return Err(ClassicalError::Genericity("u3 is a multiple of u2".into()));
            }
        }
        _ => {
            if RationalMatrix::from_columns(u3.len(), &[kappa.clone(), u3.to_vec()]).rank() < 2 {
                return Err(ClassicalError::Genericity("u3 lies in Ker u1".into()));
            }
            if dot(u2, u3).is_zero() {
                return Err(ClassicalError::Genericity("the pairing <u2,u3> vanishes".into()));
            }
        }
    }
    Ok(kappa)
}

#[derive(Debug, Clone, DeriveSerialize)]
pub struct Canonicalization {
    pub g: LeviElement,
    pub canonical: LeviPoint,
}

/// Finds an L-element moving a generic point of `D_{l-1,l}` or `D_{1,l}`
/// (`l` even) to `(R, e_1, e_1 + e_2)`.  Over the rationals this needs a
/// square root: of `kappa.u2 / kappa.u3` for `D_{l-1,l}` and of `<u2,u3>` for
/// `D_{1,l}`.
pub fn canonicalize_levi_triple(u: &LeviPoint) -> Result<Canonicalization, ClassicalError> {
    let kappa = check_canonicalizable(u)?;
    let (case, l) = (u.case, u.l);
    let n = l - 1;
    let elem = |a: RationalMatrix, t: Rational| LeviElement { a, torus: vec![t] };

    // skew normal form, kernel vector first and normalized against u2
    let u1 = u.u(1).matrix();
    let first = {
        let c = dot(&kappa, u.u(2).vector()).recip();
        kappa.iter().map(|x| x * &c).collect::<Vec<_>>()
    };
    let (pairs, _) = symplectic_pairs(u1, (0..n).map(|i| unit(n, i)).collect());
    let mut rows = vec![first];
    for (e, f) in pairs {
        rows.push(e);
        rows.push(f);
    }
    let mut g = elem(RationalMatrix::from_rows(rows), rat(1));
    let mut p = u.act(&g);
    debug_assert_eq!(*p.u(1).matrix(), skew_normal_form(l));

    // clear u2 below its first coordinate
    let u2 = p.u(2).vector().to_vec();
    let mut e = RationalMatrix::identity(n);
    for i in 1..n {
        e.set(i, 0, -&u2[i] / &u2[0]);
    }
    let step = elem(e, rat(1));
    p = p.act(&step);
    g = step.compose(&g);

    // diag(a, I) so that the Sp step and the torus finish the job
    let u3_first = p.u(3).vector()[0].clone();
    let a_sq = match case {
        LeviCase::DLastTwo => u3_first.recip(),
        _ => u3_first,
    };
    let a = rational_sqrt(&a_sq).ok_or_else(|| ClassicalError::SquareClass(fmt_rational(&a_sq)))?;
    let mut d = vec![rat(1); n];
    d[0] = a.clone();
    let step = elem(RationalMatrix::diagonal(&d), rat(1));
    p = p.act(&step);
    g = step.compose(&g);

    // symplectic step on the last l-2 coordinates
    let u3 = p.u(3).vector().to_vec();
    let c = u3[0].clone();
    let v = u3[1..].to_vec();
    let j = standard_skew(n - 1);
    let dmat = match case {
        LeviCase::DLastTwo => {
            // D v = c e_1 with D J D^T = J; M = D^T has M e_2 = J^{-1} v / c
            let w = j.inverse().expect("nondegenerate").mul_vec(&v).iter().map(|x| x / &c).collect::<Vec<_>>();
            symplectic_basis_with(&j, 1, &w)?.transpose()
        }
        _ => {
            // D^{-T} v = c e_1; M = D^T has M e_1 = v / c
            let w: Vec<Rational> = v.iter().map(|x| x / &c).collect();
            symplectic_basis_with(&j, 0, &w)?.transpose()
        }
    };
    let mut full = RationalMatrix::identity(n);
    for r in 0..n - 1 {
        for s in 0..n - 1 {
            full.set(r + 1, s + 1, dmat.get(r, s).clone());
        }
    }
    let step = elem(full, rat(1));
    p = p.act(&step);
    g = step.compose(&g);

    let step = elem(RationalMatrix::identity(n), a.recip());
    p = p.act(&step);
    g = step.compose(&g);

    let canonical = canonical_point(case, l);
    if p != canonical || u.act(&g) != canonical {
        return Err(ClassicalError::Degenerate("normal form steps did not reach the canonical point".into()));
    }
    Ok(Canonicalization { g, canonical })
}

/// A random generic point of `D_{l-1,l}` or `D_{1,l}` (`l` even) whose square
/// class allows a rational normal form: `u3` is rescaled so the relevant
/// quantity becomes a square.
pub fn random_generic_point(case: LeviCase, l: usize, rng: &mut impl Rng) -> Result<LeviPoint, ClassicalError> {
    let probe = canonical_point(case, l);
    check_canonicalizable(&probe)?;
    loop {
        let mut u = LeviPoint::random(case, l, rng);
        let Ok(kappa) = check_canonicalizable(&u) else { continue };
        let c = match case {
            LeviCase::DLastTwo => dot(&kappa, u.u(3).vector()) / dot(&kappa, u.u(2).vector()),
            _ => dot(u.u(2).vector(), u.u(3).vector()),
        };
        let scaled: Vec<Rational> = u.u(3).vector().iter().map(|x| x * &c).collect();
        u.components[2] = Component::Vector(scaled);
        return Ok(u);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_algebra;
    use crate::levidecomp::decompose_nilradical;
    use crate::parabolic::parabolic_data;
    use crate::rootsystem::{build_root_system, Nodes, SimpleType};

    fn nodes_for(case: LeviCase, l: usize) -> (SimpleType, Vec<usize>) {
        match case {
            LeviCase::B1L => (format!("B{l}").parse().unwrap(), vec![1, l]),
            LeviCase::C1L => (format!("C{l}").parse().unwrap(), vec![1, l]),
            LeviCase::DLastTwo => (format!("D{l}").parse().unwrap(), vec![l - 1, l]),
            LeviCase::D1L => (format!("D{l}").parse().unwrap(), vec![1, l]),
            LeviCase::D1LastTwo => (format!("D{l}").parse().unwrap(), vec![1, l - 1, l]),
        }
    }

    #[test]
    fn coordinates_match_nilradical_dimension() {
        for case in LeviCase::ALL {
            for l in [4, 5] {
                let (t, labels) = nodes_for(case, l);
                let alg = build_algebra(&build_root_system(t).unwrap());
                let pd = parabolic_data(&alg, &Nodes::from_labels(&labels, l).unwrap()).unwrap();
                assert_eq!(case.dim(l), pd.flag_dim, "{case} l={l}");
                assert_eq!(case.shapes(l).len(), decompose_nilradical(&alg, &pd).unwrap().len(), "{case} l={l}");
            }
        }
    }

    #[test]
    fn embedding_round_trips_and_lies_in_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for case in LeviCase::ALL {
            let l = 5;
            let u = LeviPoint::random(case, l, &mut rng);
            let x = u.to_matrix();
            assert!(case.form(l).in_lie_algebra(&x), "{case}");
            // strictly block lower triangular
            let blocks = case.blocks(l);
            for i in 0..blocks.len() {
                for j in i..blocks.len() {
                    assert!(block(&x, &blocks, i, j).is_zero(), "{case} block {i},{j}");
                }
            }
            assert_eq!(LeviPoint::from_matrix(case, l, &x).unwrap(), u);
        }
    }

    #[test]
    fn module_table_matches_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in LeviCase::ALL {
            for l in [4, 5] {
                let g = LeviElement::random(case, l, &mut rng);
                let m = group_matrix(case, l, &g);
                assert!(case.form(l).preserves(&m), "{case}");
                assert_eq!(m.determinant().unwrap(), rat(1));
                let u = LeviPoint::random(case, l, &mut rng);
                assert_eq!(u.act(&g), u.act_by_conjugation(&g), "{case} l={l}");
            }
        }
    }

    #[test]
    fn invariants_hold() {
        for case in [LeviCase::B1L, LeviCase::C1L, LeviCase::DLastTwo, LeviCase::D1LastTwo] {
            let r = verify_rational_invariant(case, case.default_l(), 11, 20).unwrap();
            assert!(r.all_equal, "{case}");
            assert!(r.non_constant(), "{case}");
        }
        assert!(verify_rational_invariant(LeviCase::D1L, 4, 1, 5).is_err());
        assert!(verify_rational_invariant(LeviCase::DLastTwo, 4, 1, 5).is_err());
    }

    #[test]
    fn canonical_input_gives_identity() {
        for case in [LeviCase::DLastTwo, LeviCase::D1L] {
            for l in [4, 6] {
                let c = canonicalize_levi_triple(&canonical_point(case, l)).unwrap();
                assert!(c.g.is_identity(), "{case} l={l}: {:?}", c.g);
            }
        }
    }

    #[test]
    fn random_points_reach_canonical_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for case in [LeviCase::DLastTwo, LeviCase::D1L] {
            for l in [4, 6] {
                for _ in 0..5 {
                    let u = random_generic_point(case, l, &mut rng).unwrap();
                    let c = canonicalize_levi_triple(&u).unwrap();
                    assert_eq!(u.act_by_conjugation(&c.g), canonical_point(case, l));
                }
            }
        }
    }

    #[test]
    fn degenerate_points_are_reported() {
        let mut u = canonical_point(LeviCase::DLastTwo, 4);
        let u2 = u.u(2).vector().to_vec();
        u.components[2] = Component::Vector(u2.iter().map(|x| x * rat(2)).collect());
        assert_eq!(
            canonicalize_levi_triple(&u).unwrap_err(),
            ClassicalError::Genericity("u3 is a multiple of u2".into())
        );
        let mut u = canonical_point(LeviCase::D1L, 4);
        u.components[0] = Component::Matrix(RationalMatrix::zeros(3, 3));
        assert!(matches!(canonicalize_levi_triple(&u), Err(ClassicalError::Genericity(_))));
        // (u3)_1 = 2 is not a square
        let mut u = canonical_point(LeviCase::D1L, 4);
        u.components[2] = Component::Vector(vec![rat(2), rat(1), rat(0)]);
        assert!(matches!(canonicalize_levi_triple(&u), Err(ClassicalError::SquareClass(_))));
    }

    #[test]
    fn case_names_parse() {
        assert_eq!("C".parse::<LeviCase>().unwrap(), LeviCase::C1L);
        assert_eq!("D_{l-1,l}".parse::<LeviCase>().unwrap(), LeviCase::DLastTwo);
        assert_eq!("D1,l-1,l".parse::<LeviCase>().unwrap(), LeviCase::D1LastTwo);
        assert!("E".parse::<LeviCase>().is_err());
    }
}

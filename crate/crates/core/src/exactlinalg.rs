//! Dense exact linear algebra over arbitrary-precision rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! integer rows obtained by clearing denominators, so intermediate entries are
//! always minors of the input and never need a gcd.  Kernels and solves use
//! rational Gauss-Jordan on the (small) systems that need them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("operation needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Mismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Exact square root of a rational, when it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Serializes a rational as its `p/q` string.
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&fmt_rational(q))?;
    }
    seq.end()
}

pub fn serialize_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape { rows, cols, got: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds from integer rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<Rational>]) -> Self {
        assert!(cols.iter().all(|c| c.len() == dim), "column length mismatch");
        Self::from_fn(dim, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == -self.transpose()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Mismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Integer rows with each row scaled by the lcm of its denominators.
    pub fn cleared_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i))).collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }

    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        determinant(self)
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (rref, pivots) = rref(&aug);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(LinalgError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| rref.get(i, n + j).clone()))
    }

    /// One solution of `self * x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Mismatch(format!("rhs length {} vs {} rows", b.len(), self.rows)));
        }
        let bcol = Self::from_fn(self.rows, 1, |i, _| b[i].clone());
        let (r, pivots) = rref(&self.hstack(&bcol));
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Ok(x)
    }
}

/// Rows of `p/q` strings.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(fmt_rational).collect()).collect();
        rows.serialize(s)
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: Self) -> RationalMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: Self) -> RationalMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: Self) -> RationalMatrix {
        self.try_mul(rhs).expect("shape mismatch in mul")
    }
}

impl Neg for RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, entries: self.entries.into_iter().map(|x| -x).collect() }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        -self.clone()
    }
}

/// Scales a rational vector to a primitive-free integer vector (multiplies by
/// the lcm of denominators; does not divide out content).
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Integer vector with content removed and first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let ints = clear_denominators(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Fraction-free row echelon reduction in place; returns the pivot columns.
///
/// After the call the first `pivots.len()` rows are in echelon form and every
/// remaining row is zero. Entries stay integral because each Bareiss update
/// is divisible by the previous pivot.
pub fn bareiss_echelon(a: &mut [Vec<BigInt>]) -> (Vec<usize>, bool) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            if lead.is_zero() {
                for j in c + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = (&row[j] * piv) / &prev;
                    }
                }
            } else {
                for j in c + 1..cols {
                    let t = &row[j] * piv - &lead * &pivot_row[j];
                    row[j] = if prev.is_one() { t } else { t / &prev };
                }
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, odd_swaps)
}

/// Rank of an integer matrix given as rows.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    bareiss_echelon(&mut rows).0.len()
}

/// Exact rank, fraction-free.
pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    integer_rank(m.cleared_rows())
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &RationalMatrix) -> Result<Rational, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    // det(m) = det(cleared) / prod(row scale factors)
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(m.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect::<Vec<_>>());
        scale *= l;
    }
    let (pivots, odd) = bareiss_echelon(&mut rows);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let mut d = rows[n - 1][n - 1].clone();
    if odd {
        d = -d;
    }
    Ok(Rational::new(d, scale))
}

/// Reduced row echelon form over the rationals plus pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                if !a.get(r, j).is_zero() {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// Basis (as columns) of the intersection of two column spans.
pub fn span_intersection(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    assert_eq!(a.rows, b.rows);
    let stacked = a.hstack(&(-b));
    let kernel = kernel_basis(&stacked);
    let vecs: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|k| a.mul_vec(&k[..a.cols]))
        .collect();
    independent_columns(a.rows, &vecs)
}

/// Keeps a maximal independent subset of the given vectors, as columns.
pub fn independent_columns(dim: usize, vecs: &[Vec<Rational>]) -> RationalMatrix {
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for v in vecs {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank(&RationalMatrix::from_columns(dim, &trial)) == trial.len() {
            kept = trial;
        }
    }
    RationalMatrix::from_columns(dim, &kept)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `a^T g b` for vectors.
pub fn bilinear(g: &RationalMatrix, a: &[Rational], b: &[Rational]) -> Rational {
    dot(a, &g.mul_vec(b))
}

/// Small helper for tests and reports: i64 view when every entry is integral and fits.
pub fn to_i64_entries(m: &RationalMatrix) -> Option<Vec<i64>> {
    m.entries
        .iter()
        .map(|x| if x.denom().is_one() { x.numer().to_i64() } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&m(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&RationalMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&RationalMatrix::zeros(2, 5)), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        // pivot columns 0 and 2; column 1 is dependent
        let a = m(&[vec![2, 4, 1, 3], vec![4, 8, 5, 1], vec![6, 12, 6, 4]]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn rank_of_rational_entries() {
        let a = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), rat(1)],
        ]);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&RationalMatrix::zeros(2, 3)).len(), 3);
        let a = m(&[vec![1, 1, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(rank(&RationalMatrix::from_columns(3, &k)), 2);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&RationalMatrix::identity(4)).unwrap(), rat(1));
        let d = RationalMatrix::diagonal(&[rat(2), rat(3)]);
        assert_eq!(determinant(&d).unwrap(), rat(6));
        assert_eq!(determinant(&m(&[vec![0, 1], vec![1, 0]])).unwrap(), rat(-1));
        assert!(matches!(
            determinant(&RationalMatrix::zeros(2, 3)),
            Err(LinalgError::NotSquare { .. })
        ));
        let h = RationalMatrix::from_rows(vec![vec![ratio(1, 2), rat(1)], vec![rat(1), ratio(1, 3)]]);
        assert_eq!(determinant(&h).unwrap(), ratio(1, 6) - rat(1));
    }

    #[test]
    fn shape_is_checked() {
        assert!(RationalMatrix::new(2, 2, vec![rat(1); 3]).is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RationalMatrix::identity(2));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).inverse(), Err(LinalgError::Singular));
        let x = a.solve(&[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert_eq!(m(&[vec![1, 1], vec![1, 1]]).solve(&[rat(1), rat(2)]), Err(LinalgError::Inconsistent));
    }

    #[test]
    fn rationals_round_trip_text() {
        for s in ["3", "-7/2", "0"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/6").map(|q| fmt_rational(&q)).as_deref(), Some("2/3"));
        assert!(parse_rational("1/0").is_none());
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }

    #[test]
    fn intersection_of_spans() {
        let a = m(&[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let b = m(&[vec![1, 0], vec![0, 0], vec![0, 1]]);
        let i = span_intersection(&a, &b);
        assert_eq!(i.cols(), 1);
        assert_eq!(rank(&i.hstack(&m(&[vec![1], vec![0], vec![0]]))), 1);
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[ratio(-1, 2), ratio(1, 3), rat(0)]);
        assert_eq!(v, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}

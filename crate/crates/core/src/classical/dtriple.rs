//! Reduction of generic triples in `(SO_{2l}/P_{1,l})^3`, `l` odd, to a fixed
//! reference tuple.  A point of `SO_{2l}/P_{1,l}` is a pair `(s, a)`: a
//! Lagrangian `s` in the component of `<e_1, .., e_l>` and a line `a` in it.

use rand::Rng;
use serde::Serialize;

use super::transversal::transversal_basis;
use super::{random_invertible, random_torus_scalar, scale_vec, ClassicalError, FormSpace, Subspace};
use crate::exactlinalg::{fmt_rational, rat, rational_sqrt, serialize_rational, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePoint {
    pub s: [Subspace; 3],
    pub a: [Subspace; 3],
}

impl TriplePoint {
    pub fn transform(&self, g: &RationalMatrix) -> Self {
        Self { s: self.s.clone().map(|x| x.transform(g)), a: self.a.clone().map(|x| x.transform(g)) }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        (0..3).all(|i| self.s[i].same_as(&other.s[i]) && self.a[i].same_as(&other.a[i]))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleReduction {
    /// Maps the adapted basis `g_1, g_2, g_3, q_1, .., q_{2l-6}, g_4, g_5, g_6`
    /// to the standard one.
    pub b: RationalMatrix,
    #[serde(serialize_with = "serialize_rational")]
    pub det: Rational,
    pub preserves_form: bool,
    pub matches_reference: bool,
}

fn check_l(l: usize) -> Result<(), ClassicalError> {
    if l < 3 || l % 2 == 0 {
        return Err(ClassicalError::Unsupported(format!("the triple reduction needs odd l >= 3, got {l}")));
    }
    Ok(())
}

/// The reference tuple: `s_1 = <e_1..e_l>`, `s_2`, `s_3` and the lines
/// `a_1 = <e_1>`, `a_2 = <e_{2l-1} + e_{2l}>`, `a_3 = <e_2 + e_{2l-2} + e_{2l}>`.
pub fn reference_tuple(l: usize) -> TriplePoint {
    let n = 2 * l;
    let k = l - 3;
    let e = |i: usize| super::unit(n, i - 1);
    let add = |x: Vec<Rational>, y: Vec<Rational>| x.iter().zip(&y).map(|(a, b)| a + b).collect::<Vec<_>>();
    let s1 = Subspace::coordinate(n, &(0..l).collect::<Vec<_>>());
    let mut v2 = vec![e(3), e(n - 1), e(n)];
    v2.extend((l + 1..=n - 3).map(e));
    let mut v3 = vec![e(2), e(n - 2), e(n)];
    for j in 1..=k {
        let sign = if j <= k / 2 { rat(-1) } else { rat(1) };
        v3.push(add(e(3 + j), scale_vec(&e(3 + k + j), &sign)));
    }
    TriplePoint {
        s: [s1, Subspace::from_vectors(n, &v2), Subspace::from_vectors(n, &v3)],
        a: [
            Subspace::from_vectors(n, &[e(1)]),
            Subspace::from_vectors(n, &[add(e(n - 1), e(n))]),
            Subspace::from_vectors(n, &[add(add(e(2), e(n - 2)), e(n))]),
        ],
    }
}

/// Membership in the variety and the conditions cutting out the open set,
/// reported by number:
/// 1. `s_1 ∩ s_2 ∩ s_3 = 0`;
/// 2. `s_1 + s_2 + s_3` is everything;
/// 3. each `s_i ∩ s_j` is a line;
/// 4. `a_1 + a_2 + a_3` has dimension 3;
/// 5. it meets `Σ s_i ∩ s_j` only in 0;
/// 6. `a_i + s_j + s_k` is everything for `{i,j,k} = {1,2,3}`;
/// 7. the lines `a_i` are pairwise non-orthogonal.
pub fn check_conditions(l: usize, p: &TriplePoint) -> Result<(), ClassicalError> {
    let n = 2 * l;
    let form = FormSpace::orthogonal(n);
    for i in 0..3 {
        if p.s[i].ambient() != n || p.s[i].dim() != l || !p.s[i].is_isotropic(&form) {
            return Err(ClassicalError::NotInVariety(format!("s{} is not an isotropic subspace of dimension {l}", i + 1)));
        }
        if p.a[i].dim() != 1 || !p.s[i].contains(&p.a[i]) {
            return Err(ClassicalError::NotInVariety(format!("a{} is not a line in s{}", i + 1, i + 1)));
        }
    }
    let [s1, s2, s3] = &p.s;
    if s1.intersect(s2).intersect(s3).dim() != 0 {
        return Err(ClassicalError::Condition(1));
    }
    if s1.sum(s2).sum(s3).dim() != n {
        return Err(ClassicalError::Condition(2));
    }
    let (i12, i23, i13) = (s1.intersect(s2), s2.intersect(s3), s1.intersect(s3));
    if [&i12, &i23, &i13].iter().any(|x| x.dim() != 1) {
        return Err(ClassicalError::Condition(3));
    }
    let a = p.a[0].sum(&p.a[1]).sum(&p.a[2]);
    if a.dim() != 3 {
        return Err(ClassicalError::Condition(4));
    }
    if i12.sum(&i23).sum(&i13).intersect(&a).dim() != 0 {
        return Err(ClassicalError::Condition(5));
    }
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        if p.a[i].sum(&p.s[j]).sum(&p.s[k]).dim() != n {
            return Err(ClassicalError::Condition(6));
        }
    }
    let f: Vec<Vec<Rational>> = p.a.iter().map(|x| x.basis().column(0)).collect();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if form.pair(&f[i], &f[j]) == rat(0) {
            return Err(ClassicalError::Condition(7));
        }
    }
    Ok(())
}

pub fn reduce_triple_d_odd(l: usize, p: &TriplePoint) -> Result<TripleReduction, ClassicalError> {
    check_l(l)?;
    check_conditions(l, p)?;
    let n = 2 * l;
    let form = FormSpace::orthogonal(n);
    let [s1, s2, s3] = &p.s;
    let line = |x: &Subspace| x.basis().column(0);
    let (mut f1, mut f2, mut f3) = (line(&p.a[0]), line(&p.a[1]), line(&p.a[2]));
    let (mut f4, mut f5, mut f6) = (line(&s2.intersect(s3)), line(&s1.intersect(s3)), line(&s1.intersect(s2)));
    let b = |x: &[Rational], y: &[Rational]| form.pair(x, y);
    let (b1, b2, b3) = (b(&f1, &f2), b(&f1, &f3), b(&f2, &f3));

    // rescale so that every b_i = 1; lambda_1^2 = b_3 / (b_1 b_2)
    let sq = &b3 / (&b1 * &b2);
    let l1 = rational_sqrt(&sq).ok_or_else(|| ClassicalError::SquareClass(fmt_rational(&sq)))?;
    let l2 = (&l1 * &b1).recip();
    let l3 = (&l1 * &b2).recip();
    f1 = scale_vec(&f1, &l1);
    f2 = scale_vec(&f2, &l2);
    f3 = scale_vec(&f3, &l3);
    f4 = scale_vec(&f4, &b(&f1, &f4).recip());
    f5 = scale_vec(&f5, &b(&f2, &f5).recip());
    f6 = scale_vec(&f6, &b(&f3, &f6).recip());

    let sub = |x: &[Rational], y: &[Rational]| x.iter().zip(y).map(|(a, c)| a - c).collect::<Vec<_>>();
    let g = [
        f1.clone(),
        f5.clone(),
        f6.clone(),
        sub(&sub(&f3, &f4), &f5),
        sub(&f2, &f4),
        f4.clone(),
    ];

    // Lagrangians s_i ∩ S^perp of S^perp, in coordinates of a basis W of S^perp
    let s_span = Subspace::from_vectors(n, &[f1, f2, f3, f4, f5, f6]);
    let w = s_span.orthogonal_complement(&form);
    let wb = w.basis().clone();
    let sub_gram = &(&wb.transpose() * &form.gram) * &wb;
    let sub_space = FormSpace::new(sub_gram)?;
    let local: Vec<Subspace> = p
        .s
        .iter()
        .map(|s| {
            let v = s.intersect(&w).vectors();
            let c: Vec<Vec<Rational>> = v.iter().map(|x| w.coordinates(x).expect("vector of S^perp")).collect();
            Subspace::from_vectors(n - 6, &c)
        })
        .collect();
    let tb = transversal_basis(&sub_space, [&local[0], &local[1], &local[2]])?;
    let q = &wb * &tb.basis;

    let mut cols: Vec<Vec<Rational>> = g[..3].to_vec();
    cols.extend(q.columns());
    cols.extend(g[3..].iter().cloned());
    let e = RationalMatrix::from_columns(n, &cols);
    let bmat = e.inverse()?;
    let det = bmat.determinant()?;
    if det != rat(1) {
        return Err(ClassicalError::WrongComponent);
    }
    let preserves_form = form.preserves(&bmat);
    let matches_reference = p.transform(&bmat).same_as(&reference_tuple(l));
    Ok(TripleReduction { b: bmat, det, preserves_form, matches_reference })
}

/// A random point of the open set: the reference tuple moved by a random
/// group element, with random bases and line scalings.
pub fn random_triple_point(l: usize, rng: &mut impl Rng) -> TriplePoint {
    let n = 2 * l;
    let g = FormSpace::orthogonal(n).random_group_element(rng);
    let r = reference_tuple(l).transform(&g);
    TriplePoint {
        s: r.s.map(|s| Subspace::new(&(s.basis() * &random_invertible(rng, l)))),
        a: r.a.map(|a| Subspace::from_vectors(n, &[scale_vec(&a.basis().column(0), &random_torus_scalar(rng))])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reference_tuple_is_in_open_set() {
        for l in [5, 7] {
            check_conditions(l, &reference_tuple(l)).unwrap();
        }
        check_conditions(3, &reference_tuple(3)).unwrap();
    }

    #[test]
    fn reference_maps_to_itself_by_identity() {
        let r = reduce_triple_d_odd(5, &reference_tuple(5)).unwrap();
        assert_eq!(r.b, RationalMatrix::identity(10));
        assert!(r.matches_reference);
    }

    #[test]
    fn random_points_reduce_to_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for l in [3, 5] {
            for _ in 0..3 {
                let p = random_triple_point(l, &mut rng);
                let r = reduce_triple_d_odd(l, &p).unwrap();
                assert!(r.preserves_form && r.matches_reference);
                assert_eq!(r.det, rat(1));
                check_conditions(l, &p.transform(&r.b)).unwrap();
            }
        }
    }

    #[test]
    fn orthogonal_lines_violate_condition_seven() {
        let mut p = reference_tuple(5);
        // e_1 - e_2 lies in s_1 and is orthogonal to a_2 = <e_9 + e_10>
        let mut v = super::super::unit(10, 0);
        v[1] = rat(-1);
        p.a[0] = Subspace::from_vectors(10, &[v]);
        assert_eq!(check_conditions(5, &p).unwrap_err(), ClassicalError::Condition(7));
        assert!(reduce_triple_d_odd(4, &reference_tuple(5)).is_err());
    }
}

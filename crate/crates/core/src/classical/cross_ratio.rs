//! Cross ratios of four concurrent "lines" built from a configuration by
//! sums and intersections.  Because the construction only uses the group's
//! own operations, the value is constant on orbits; a free parameter then
//! yields infinitely many orbits.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{build_classical_model, unit, ClassicalError, FormSpace, Subspace};
use crate::exactlinalg::{fmt_rational, rat, serialize_rational, Rational, RationalMatrix};
use crate::rootsystem::{Family, Nodes};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossRatioKind {
    /// `SO_6`, three points of `SO_6/P_{1,3}`.
    So6,
    /// `SO_{2l}`, three points of `SO_{2l}/P_{1,l}`.
    So2lP1l { l: usize },
    /// `SO_{2l}`, three points of `SO_{2l}/P_{l-1,l}`.
    So2lPLastTwo { l: usize },
    /// Four points on the curve `exp(t Y) x_0` through the base flag of
    /// `G/P_I`, `Y` the lowering vector of the smallest node of `I`.
    Quadruple { family: Family, l: usize, nodes: Nodes },
}

impl fmt::Display for CrossRatioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatioKind::So6 => write!(f, "so6-cross-ratio"),
            CrossRatioKind::So2lP1l { l } => write!(f, "so{}-p1l", 2 * l),
            CrossRatioKind::So2lPLastTwo { l } => write!(f, "so{}-pl-1l", 2 * l),
            CrossRatioKind::Quadruple { family, l, nodes } => write!(f, "quadruple {family}{l} {{{nodes}}}"),
        }
    }
}

/// `[a, b] = det(a b)` for coordinate pairs.
fn bracket(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// `[p1,p3][p2,p4] / ([p1,p4][p2,p3])`.
pub fn cross_ratio4(p: &[[Rational; 2]; 4]) -> Result<Rational, ClassicalError> {
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        if bracket(&p[i], &p[j]).is_zero() {
            return Err(ClassicalError::Degenerate(format!("lines {} and {} coincide", i + 1, j + 1)));
        }
    }
    Ok(bracket(&p[0], &p[2]) * bracket(&p[1], &p[3]) / (bracket(&p[0], &p[3]) * bracket(&p[1], &p[2])))
}

/// Cross ratio of four subspaces `kernel < L_i < carrier` with
/// `dim L_i = dim kernel + 1` and `dim carrier = dim kernel + 2`.
pub fn pencil_cross_ratio(kernel: &Subspace, carrier: &Subspace, lines: [&Subspace; 4]) -> Result<Rational, ClassicalError> {
    let k = kernel.dim();
    if carrier.dim() != k + 2 || !carrier.contains(kernel) {
        return Err(ClassicalError::Degenerate("carrier is not a plane over the common kernel".into()));
    }
    let mut cols = kernel.vectors();
    for v in carrier.vectors() {
        if cols.len() == k + 2 {
            break;
        }
        let mut trial = cols.clone();
        trial.push(v);
        if RationalMatrix::from_columns(kernel.ambient(), &trial).rank() == trial.len() {
            cols = trial;
        }
    }
    let frame = Subspace::from_vectors(kernel.ambient(), &cols);
    let mut pts: Vec<[Rational; 2]> = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.dim() != k + 1 || !line.contains(kernel) || !carrier.contains(line) {
            return Err(ClassicalError::Degenerate(format!("line {} is not in the pencil", i + 1)));
        }
        let v = line.vector_outside(kernel).expect("line is larger than kernel");
        let c = frame.coordinates(&v).expect("vector of the carrier");
        pts.push([c[k].clone(), c[k + 1].clone()]);
    }
    cross_ratio4(&pts.try_into().expect("four points"))
}

/// Parameters of the triple configurations: `T_1 = <e_1 + t e_2>`,
/// `T_2 = <x_2 e_2 + y_2 e_3>`, `T_3 = <x_3 e_1 + y_3 e_3>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleParams {
    pub t1: Rational,
    pub t2: [Rational; 2],
    pub t3: [Rational; 2],
}

impl TripleParams {
    pub fn new(t1: Rational) -> Self {
        Self { t1, t2: [rat(1), rat(1)], t3: [rat(1), rat(1)] }
    }

    /// `[t]` or `[t, x2, y2, x3, y3]`.
    pub fn from_slice(v: &[Rational]) -> Result<Self, ClassicalError> {
        match v {
            [t] => Ok(Self::new(t.clone())),
            [t, x2, y2, x3, y3] => Ok(Self { t1: t.clone(), t2: [x2.clone(), y2.clone()], t3: [x3.clone(), y3.clone()] }),
            _ => Err(ClassicalError::Unsupported("triple parameters are t1 or t1,x2,y2,x3,y3".into())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TripleConfiguration {
    pub s: [Subspace; 3],
    /// Lines `T_i` (for `P_{1,l}`) or hyperplanes `U_i'` of `S_i` (for `P_{l-1,l}`).
    pub extra: [Subspace; 3],
    pub hyperplanes: bool,
}

impl TripleConfiguration {
    pub fn transform(&self, g: &RationalMatrix) -> Self {
        Self {
            s: self.s.clone().map(|x| x.transform(g)),
            extra: self.extra.clone().map(|x| x.transform(g)),
            hyperplanes: self.hyperplanes,
        }
    }
}

/// `S_1 = <e_1, e_2, e_{2l-2}>`, `S_2 = <e_2, e_3, e_{2l}>`,
/// `S_3 = <e_1, e_3, e_{2l-1}>`, each plus `<e_4, .., e_l>`; for `l = 3` these
/// are `<e_1,e_2,e_4>`, `<e_2,e_3,e_6>`, `<e_1,e_3,e_5>`.
pub fn triple_configuration(l: usize, hyperplanes: bool, p: &TripleParams) -> Result<TripleConfiguration, ClassicalError> {
    if l < 3 {
        return Err(ClassicalError::Unsupported(format!("needs l >= 3, got {l}")));
    }
    let n = 2 * l;
    let e = |i: usize| unit(n, i - 1);
    let k0: Vec<Vec<Rational>> = (4..=l).map(e).collect();
    let with_k0 = |mut v: Vec<Vec<Rational>>| {
        v.extend(k0.iter().cloned());
        Subspace::from_vectors(n, &v)
    };
    let comb = |a: &Rational, i: usize, b: &Rational, j: usize| -> Vec<Rational> {
        e(i).iter().zip(e(j)).map(|(x, y)| a * x + b * y).collect()
    };
    let t1 = comb(&rat(1), 1, &p.t1, 2);
    let t2 = comb(&p.t2[0], 2, &p.t2[1], 3);
    let t3 = comb(&p.t3[0], 1, &p.t3[1], 3);
    for (i, t) in [&t2, &t3].iter().enumerate() {
        if super::is_zero_vec(t) {
            return Err(ClassicalError::Degenerate(format!("T{} is zero", i + 2)));
        }
    }
    let s = [
        with_k0(vec![e(1), e(2), e(n - 2)]),
        with_k0(vec![e(2), e(3), e(n)]),
        with_k0(vec![e(1), e(3), e(n - 1)]),
    ];
    let extra = if hyperplanes {
        [with_k0(vec![t1, e(n - 2)]), with_k0(vec![t2, e(n)]), with_k0(vec![t3, e(n - 1)])]
    } else {
        [Subspace::from_vectors(n, &[t1]), Subspace::from_vectors(n, &[t2]), Subspace::from_vectors(n, &[t3])]
    };
    Ok(TripleConfiguration { s, extra, hyperplanes })
}

/// The four lines `S_1∩S_3`, `S_1∩S_2`, `T_1` and `(T_2 + T_3) ∩ <e_1, e_2>`,
/// all taken modulo `S_1∩S_2∩S_3`.
pub fn triple_cross_ratio(c: &TripleConfiguration) -> Result<Rational, ClassicalError> {
    let [s1, s2, s3] = &c.s;
    let k0 = s1.intersect(s2).intersect(s3);
    let (i12, i13, i23) = (s1.intersect(s2), s1.intersect(s3), s2.intersect(s3));
    let t: Vec<Subspace> = if c.hyperplanes {
        let span = i12.sum(&i13).sum(&i23);
        c.extra.iter().map(|u| u.intersect(&span)).collect()
    } else {
        c.extra.iter().map(|x| x.sum(&k0)).collect()
    };
    let carrier = i13.sum(&i12);
    let t23 = t[1].sum(&t[2]);
    if t23.dim() != k0.dim() + 2 {
        return Err(ClassicalError::Degenerate("T2 + T3 is not direct".into()));
    }
    if t23.same_as(&carrier) {
        return Err(ClassicalError::Degenerate("T2 + T3 equals <e1, e2>".into()));
    }
    let t4 = t23.intersect(&carrier);
    pencil_cross_ratio(&k0, &carrier, [&i13, &i12, &t[0], &t4])
}

fn vector_flag_supported(family: Family, l: usize, i: usize) -> bool {
    match family {
        Family::B => i + 1 <= l,
        Family::C => i <= l,
        Family::D => i + 2 <= l,
        _ => false,
    }
}

/// The base flag of `P_I` in the matrix model, one subspace per node.
fn base_flag(family: Family, l: usize, nodes: &Nodes) -> Vec<Subspace> {
    let n = if family == Family::B { 2 * l + 1 } else { 2 * l };
    nodes
        .labels()
        .into_iter()
        .map(|j| {
            let mut idx: Vec<usize> = (0..j).collect();
            if family == Family::D && j == l - 1 {
                // the other family of Lagrangians: <e_1..e_{l-1}, e_{l+1}>
                idx.push(l);
            }
            Subspace::coordinate(n, &idx)
        })
        .collect()
}

/// Lowering root vector of the simple root `i` (1-based) in the model.
fn lowering_vector(space: &FormSpace, i: usize) -> Result<RationalMatrix, ClassicalError> {
    let n = space.dim;
    let (r1, c1) = (i, i - 1);
    let (r2, c2) = (n - i, n - i - 1);
    let candidates: Vec<RationalMatrix> = if (r1, c1) == (r2, c2) {
        vec![RationalMatrix::from_fn(n, n, |a, b| if (a, b) == (r1, c1) { rat(1) } else { rat(0) })]
    } else {
        [-1, 1]
            .iter()
            .map(|&c| {
                RationalMatrix::from_fn(n, n, |a, b| {
                    if (a, b) == (r1, c1) {
                        rat(1)
                    } else if (a, b) == (r2, c2) {
                        rat(c)
                    } else {
                        rat(0)
                    }
                })
            })
            .collect()
    };
    candidates
        .into_iter()
        .find(|y| space.in_lie_algebra(y) && (y * y).is_zero())
        .ok_or_else(|| ClassicalError::Unsupported(format!("no square-zero lowering vector for node {i}")))
}

/// The `G/P_I` points `exp(t_k Y) x_0`, each a flag.
pub fn quadruple_points(family: Family, l: usize, nodes: &Nodes, t: &[Rational]) -> Result<Vec<Vec<Subspace>>, ClassicalError> {
    let model = build_classical_model(family, l)?;
    let i = *nodes.labels().first().ok_or_else(|| ClassicalError::Unsupported("I is empty".into()))?;
    if !vector_flag_supported(family, l, i) {
        return Err(ClassicalError::Unsupported(format!(
            "node {i} of {family}{l} is not realized by a square-zero lowering vector on the natural module"
        )));
    }
    let y = lowering_vector(&model.space, i)?;
    let id = RationalMatrix::identity(model.space.dim);
    let flag = base_flag(family, l, nodes);
    Ok(t.iter()
        .map(|tk| {
            let g = &id + &y.scale(tk);
            flag.iter().map(|f| f.transform(&g)).collect()
        })
        .collect())
}

/// Cross ratio read off the first flag member of four points on the curve.
pub fn quadruple_cross_ratio(points: &[Vec<Subspace>]) -> Result<Rational, ClassicalError> {
    let members: Vec<&Subspace> = points.iter().map(|p| &p[0]).collect();
    if members.len() != 4 {
        return Err(ClassicalError::Unsupported("needs exactly four points".into()));
    }
    let kernel = members[1..].iter().fold(members[0].clone(), |acc, m| acc.intersect(m));
    let carrier = members[1..].iter().fold(members[0].clone(), |acc, m| acc.sum(m));
    pencil_cross_ratio(&kernel, &carrier, [members[0], members[1], members[2], members[3]])
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossRatioValue {
    pub params: Vec<String>,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub invariant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossRatioCertificate {
    pub kind: String,
    pub trials: usize,
    pub values: Vec<CrossRatioValue>,
    pub invariant: bool,
    /// All parameter sets gave pairwise different values.
    pub distinct: bool,
}

/// Evaluates the cross ratio for each parameter set and re-evaluates it on
/// `trials` random group translates.
pub fn cross_ratio_certificate(
    kind: &CrossRatioKind,
    params: &[Vec<Rational>],
    trials: usize,
    seed: u64,
) -> Result<CrossRatioCertificate, ClassicalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    for p in params {
        let (value, invariant) = match kind {
            CrossRatioKind::So6 | CrossRatioKind::So2lP1l { .. } | CrossRatioKind::So2lPLastTwo { .. } => {
                let (l, hyper) = match kind {
                    CrossRatioKind::So6 => (3, false),
                    CrossRatioKind::So2lP1l { l } => (*l, false),
                    CrossRatioKind::So2lPLastTwo { l } => (*l, true),
                    CrossRatioKind::Quadruple { .. } => unreachable!(),
                };
                let cfg = triple_configuration(l, hyper, &TripleParams::from_slice(p)?)?;
                let v = triple_cross_ratio(&cfg)?;
                let space = FormSpace::orthogonal(2 * l);
                let mut ok = true;
                for _ in 0..trials {
                    let g = space.random_group_element(&mut rng);
                    ok &= triple_cross_ratio(&cfg.transform(&g))? == v;
                }
                (v, ok)
            }
            CrossRatioKind::Quadruple { family, l, nodes } => {
                if p.len() != 4 {
                    return Err(ClassicalError::Unsupported("quadruple parameters are t1,t2,t3,t4".into()));
                }
                let pts = quadruple_points(*family, *l, nodes, p)?;
                let v = quadruple_cross_ratio(&pts)?;
                let space = build_classical_model(*family, *l)?.space;
                let mut ok = true;
                for _ in 0..trials {
                    let g = space.random_group_element(&mut rng);
                    let moved: Vec<Vec<Subspace>> = pts.iter().map(|f| f.iter().map(|s| s.transform(&g)).collect()).collect();
                    ok &= quadruple_cross_ratio(&moved)? == v;
                }
                (v, ok)
            }
        };
        values.push(CrossRatioValue { params: p.iter().map(fmt_rational).collect(), value, invariant });
    }
    let distinct = values.iter().enumerate().all(|(i, a)| values[i + 1..].iter().all(|b| a.value != b.value));
    Ok(CrossRatioCertificate {
        kind: kind.to_string(),
        trials,
        invariant: values.iter().all(|v| v.invariant),
        distinct,
        values,
    })
}

/// `x ↦ (1 : x)` coordinates, for tests and examples.
pub fn affine_points(t: &[Rational; 4]) -> [[Rational; 2]; 4] {
    t.clone().map(|x| [rat(1), x])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::ratio;

    #[test]
    fn harmonic_quadruple() {
        let p = affine_points(&[rat(0), rat(1), ratio(1, 3), rat(-1)]);
        assert_eq!(cross_ratio4(&p).unwrap(), rat(-1));
        assert!(cross_ratio4(&affine_points(&[rat(0), rat(0), rat(1), rat(2)])).is_err());
    }

    #[test]
    fn so6_value_is_minus_t() {
        for t in [ratio(1, 2), ratio(1, 3), rat(5)] {
            let cfg = triple_configuration(3, false, &TripleParams::new(t.clone())).unwrap();
            assert_eq!(triple_cross_ratio(&cfg).unwrap(), -t.clone());
            let cfg = triple_configuration(3, true, &TripleParams::new(t.clone())).unwrap();
            assert_eq!(triple_cross_ratio(&cfg).unwrap(), -t);
        }
    }

    #[test]
    fn so6_certificate() {
        let c = cross_ratio_certificate(&CrossRatioKind::So6, &[vec![ratio(1, 2)], vec![ratio(1, 3)]], 5, 1).unwrap();
        assert!(c.invariant && c.distinct);
        assert_eq!(c.values[0].value, ratio(-1, 2));
    }

    #[test]
    fn higher_rank_matches_quotient() {
        let t = ratio(2, 7);
        let six = triple_cross_ratio(&triple_configuration(3, false, &TripleParams::new(t.clone())).unwrap()).unwrap();
        for hyper in [false, true] {
            let ten = triple_cross_ratio(&triple_configuration(5, hyper, &TripleParams::new(t.clone())).unwrap()).unwrap();
            assert_eq!(ten, six);
        }
        let c = cross_ratio_certificate(&CrossRatioKind::So2lPLastTwo { l: 5 }, &[vec![t]], 3, 2).unwrap();
        assert!(c.invariant);
    }

    #[test]
    fn degenerate_triples() {
        let bad = TripleParams { t1: rat(1), t2: [rat(1), rat(0)], t3: [rat(1), rat(0)] };
        let cfg = triple_configuration(3, false, &bad).unwrap();
        assert_eq!(triple_cross_ratio(&cfg).unwrap_err(), ClassicalError::Degenerate("T2 + T3 equals <e1, e2>".into()));
        let bad = TripleParams { t1: rat(1), t2: [rat(0), rat(1)], t3: [rat(0), rat(2)] };
        let cfg = triple_configuration(3, false, &bad).unwrap();
        assert_eq!(triple_cross_ratio(&cfg).unwrap_err(), ClassicalError::Degenerate("T2 + T3 is not direct".into()));
    }

    #[test]
    fn quadruple_on_curve() {
        let t = [rat(0), rat(1), ratio(1, 3), rat(-1)];
        for (family, l, labels) in [(Family::B, 3, vec![1, 3]), (Family::C, 3, vec![3]), (Family::D, 4, vec![2, 4])] {
            let nodes = Nodes::from_labels(&labels, l).unwrap();
            let pts = quadruple_points(family, l, &nodes, &t).unwrap();
            assert_eq!(quadruple_cross_ratio(&pts).unwrap(), rat(-1), "{family}{l}");
        }
        let d4 = Nodes::from_labels(&[4], 4).unwrap();
        assert!(quadruple_points(Family::D, 4, &d4, &t).is_err());
    }
}

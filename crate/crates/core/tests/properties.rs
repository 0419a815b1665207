//! Property tests for the structural invariants of each layer.

use flagrank_core::chevalley::{build_algebra, exp_ad, ChevalleyAlgebra, LieElement};
use flagrank_core::classical::cross_ratio::{quadruple_cross_ratio, quadruple_points, triple_configuration, triple_cross_ratio, TripleParams};
use flagrank_core::classical::dtriple::{check_conditions, random_triple_point, reduce_triple_d_odd};
use flagrank_core::classical::levi::{canonicalize_levi_triple, random_generic_point, verify_rational_invariant, LeviCase};
use flagrank_core::classical::transversal::{random_transversal_triple, transversal_basis};
use flagrank_core::classical::{antidiagonal, build_classical_model, FormSpace};
use flagrank_core::exactlinalg::{rat, ratio, Rational, RationalMatrix};
use flagrank_core::levidecomp::{decompose_nilradical, invariant_quadratic_weights, weight_balance};
use flagrank_core::orbitrank::{levi_open_orbit, transitivity_with, Engine, RankConfig};
use flagrank_core::parabolic::parabolic_data;
use flagrank_core::rootsystem::{build_root_system, Family, Nodes, SimpleType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SMALL: [&str; 9] = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "B4"];

fn algebra(name: &str) -> ChevalleyAlgebra {
    build_algebra(&build_root_system(name.parse().unwrap()).unwrap())
}

/// Nodes from a bit mask, forced nonempty.
fn nodes_from_mask(rank: usize, mask: u32) -> Nodes {
    let labels: Vec<usize> = (1..=rank).filter(|i| mask & (1 << (i - 1)) != 0).collect();
    if labels.is_empty() {
        Nodes::from_labels(&[1], rank).unwrap()
    } else {
        Nodes::from_labels(&labels, rank).unwrap()
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| *q != rat(0))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn coroots_are_brackets_of_simple_vectors(k in 0usize..SMALL.len()) {
        let alg = algebra(SMALL[k]);
        let rs = alg.root_system();
        for i in 0..alg.rank() {
            let mut e = vec![0; alg.rank()];
            e[i] = 1;
            let r = rs.positive_index(&e).unwrap();
            let h = alg.bracket(&LieElement::basis(alg.dim(), alg.raising_index(r)), &LieElement::basis(alg.dim(), alg.lowering_index(r))).unwrap();
            prop_assert_eq!(h, LieElement::basis(alg.dim(), alg.cartan_index(i)));
        }
    }

    #[test]
    fn cartan_acts_by_root_pairings(k in 0usize..SMALL.len(), c in prop::collection::vec(-4i64..=4, 4)) {
        let alg = algebra(SMALL[k]);
        let l = alg.rank();
        let mut h = LieElement::zero(alg.dim());
        for i in 0..l {
            h.coeffs[alg.cartan_index(i)] = rat(c[i % c.len()]);
        }
        for idx in l..alg.dim() {
            let w = alg.weight_of(idx);
            let value: i64 = (0..l).map(|i| c[i % c.len()] * alg.root_system().pairing(&w, i)).sum();
            let got = alg.bracket(&h, &LieElement::basis(alg.dim(), idx)).unwrap();
            prop_assert_eq!(got, LieElement::basis(alg.dim(), idx).scale(&rat(value)));
        }
    }

    #[test]
    fn exp_of_nilpotent_is_invertible(k in 0usize..SMALL.len(), c in prop::collection::vec(-2i64..=2, 16)) {
        let alg = algebra(SMALL[k]);
        let mut a = LieElement::zero(alg.dim());
        for r in 0..alg.num_positive() {
            a.coeffs[alg.raising_index(r)] = rat(c[r % c.len()]);
        }
        let plus = exp_ad(&alg, &a).unwrap();
        let minus = exp_ad(&alg, &a.scale(&rat(-1))).unwrap();
        prop_assert!(plus.compose(&minus).is_identity());
    }

    #[test]
    fn parabolic_index_sets_partition(k in 0usize..SMALL.len(), mask in 1u32..16, extra in 0u32..16) {
        let alg = algebra(SMALL[k]);
        let i = nodes_from_mask(alg.rank(), mask);
        let j = nodes_from_mask(alg.rank(), mask | extra);
        let pi = parabolic_data(&alg, &i).unwrap();
        let pj = parabolic_data(&alg, &j).unwrap();
        let mut all = [pi.u_minus_basis.clone(), pi.levi_basis.clone(), pi.u_plus_basis(&alg)].concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..alg.dim()).collect::<Vec<_>>());
        prop_assert!(pi.flag_dim <= pj.flag_dim);
    }

    #[test]
    fn summands_are_graded(k in 0usize..SMALL.len(), mask in 1u32..16) {
        let alg = algebra(SMALL[k]);
        let rs = alg.root_system();
        let nodes = nodes_from_mask(alg.rank(), mask);
        let pd = parabolic_data(&alg, &nodes).unwrap();
        let summands = decompose_nilradical(&alg, &pd).unwrap();
        let mut degrees: Vec<Vec<i64>> = pd.u_minus_roots.iter().map(|&r| rs.i_degree(&rs.positive_roots()[r], &nodes).unwrap()).collect();
        degrees.sort();
        degrees.dedup();
        prop_assert_eq!(summands.len(), degrees.len());
        prop_assert_eq!(summands.iter().map(|s| s.dim).sum::<usize>(), pd.flag_dim);
        for s1 in &summands {
            for s2 in &summands {
                let d: Vec<i64> = s1.degree.iter().zip(&s2.degree).map(|(a, b)| a + b).collect();
                let target = summands.iter().find(|s| s.degree == d);
                for &a in &s1.basis {
                    for &b in &s2.basis {
                        for &(kk, _) in alg.basis_bracket(a, b) {
                            prop_assert!(target.is_some_and(|t| t.basis.contains(&kk)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn balanced_invariants_obstruct_open_orbits(k in 0usize..SMALL.len(), mask in 1u32..16) {
        let alg = algebra(SMALL[k]);
        let nodes = nodes_from_mask(alg.rank(), mask);
        let pd = parabolic_data(&alg, &nodes).unwrap();
        let summands = decompose_nilradical(&alg, &pd).unwrap();
        let weights: Vec<Vec<i64>> = invariant_quadratic_weights(&alg, &pd, &summands).into_iter().map(|(_, w)| w).collect();
        if weight_balance(&weights).is_some() {
            prop_assert!(!levi_open_orbit(&alg, &pd, 1, &RankConfig::default()).transitive);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn transitivity_is_monotone(k in 0usize..SMALL.len(), mask in 1u32..16, n in 2usize..=5, seed in 0u64..1000) {
        let t: SimpleType = SMALL[k].parse().unwrap();
        let engine = Engine::new();
        let config = RankConfig::with_seed(seed);
        let nodes = nodes_from_mask(t.rank, mask);
        let (alg, pd) = engine.parabolic(t, &nodes).unwrap();
        if transitivity_with(&alg, &pd, n, &config).unwrap().transitive {
            prop_assert!(transitivity_with(&alg, &pd, n - 1, &config).unwrap().transitive);
            for i in nodes.labels() {
                let single = Nodes::from_labels(&[i], t.rank).unwrap();
                prop_assert!(engine.is_generically_transitive(t, &single, n, &config).unwrap().transitive);
            }
        }
    }

    #[test]
    fn more_retries_never_lower_the_rank(k in 0usize..SMALL.len(), mask in 1u32..16, seed in 0u64..1000) {
        let t: SimpleType = SMALL[k].parse().unwrap();
        let (alg, pd) = Engine::new().parabolic(t, &nodes_from_mask(t.rank, mask)).unwrap();
        let one = RankConfig { retries: 1, ..RankConfig::with_seed(seed) };
        let three = RankConfig { retries: 3, ..RankConfig::with_seed(seed) };
        let n = 4;
        let a = transitivity_with(&alg, &pd, n, &one).unwrap().certificate.achieved_rank;
        let b = transitivity_with(&alg, &pd, n, &three).unwrap().certificate.achieved_rank;
        prop_assert!(b >= a);
    }

    #[test]
    fn model_group_elements_preserve_the_form(f in 0usize..3, l in 2usize..=5, seed in any::<u64>()) {
        let family = [Family::B, Family::C, Family::D][f];
        let l = if family == Family::D { l.max(3) } else { l };
        let model = build_classical_model(family, l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = model.space.random_group_element(&mut rng);
        prop_assert!(model.space.preserves(&g));
        prop_assert_eq!(g.determinant().unwrap(), rat(1));
    }

    #[test]
    fn transversal_basis_has_gram_q(half in 1usize..=3, seed in any::<u64>()) {
        let k = 2 * half;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (space, [a, b, c]) = random_transversal_triple(k, &mut rng);
        let out = transversal_basis(&space, [&a, &b, &c]).unwrap();
        prop_assert_eq!(&(&out.basis.transpose() * &space.gram) * &out.basis, antidiagonal(2 * k));
    }

    #[test]
    fn canonical_form_is_idempotent(dodd in any::<bool>(), l in prop::sample::select(vec![4usize, 6]), seed in any::<u64>()) {
        let case = if dodd { LeviCase::DLastTwo } else { LeviCase::D1L };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_generic_point(case, l, &mut rng).unwrap();
        let first = canonicalize_levi_triple(&u).unwrap();
        let again = canonicalize_levi_triple(&first.canonical).unwrap();
        prop_assert!(again.g.is_identity());
        prop_assert_eq!(again.canonical, first.canonical);
    }

    #[test]
    fn levi_invariants_hold_for_any_seed(c in 0usize..4, seed in any::<u64>()) {
        let (case, l) = [(LeviCase::B1L, 4), (LeviCase::C1L, 3), (LeviCase::DLastTwo, 5), (LeviCase::D1LastTwo, 5)][c];
        let r = verify_rational_invariant(case, l, seed, 4).unwrap();
        prop_assert!(r.all_equal);
    }

    #[test]
    fn triple_cross_ratio_closed_form(
        t in nonzero_rational(), x2 in nonzero_rational(), y2 in nonzero_rational(),
        x3 in nonzero_rational(), y3 in nonzero_rational(), l in 3usize..=4, hyper in any::<bool>(), seed in any::<u64>()
    ) {
        let p = TripleParams { t1: t.clone(), t2: [x2.clone(), y2.clone()], t3: [x3.clone(), y3.clone()] };
        let cfg = triple_configuration(l, hyper, &p).unwrap();
        // (T2 + T3) meets <e1, e2> in <x3 y2 e1 - x2 y3 e2>
        match triple_cross_ratio(&cfg) {
            Ok(v) => {
                prop_assert_eq!(v.clone(), -(&t * &y2 * &x3) / (&x2 * &y3));
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let g = FormSpace::orthogonal(2 * l).random_group_element(&mut rng);
                prop_assert_eq!(triple_cross_ratio(&cfg.transform(&g)).unwrap(), v);
            }
            // T_1 coincides with the fourth line exactly when t = -x2 y3 / (x3 y2)
            Err(_) => prop_assert_eq!(&t * &x3 * &y2, -(&x2 * &y3)),
        }
    }

    #[test]
    fn quadruple_matches_affine_cross_ratio(ts in prop::collection::btree_set(-8i64..=8, 4), seed in any::<u64>()) {
        let t: Vec<Rational> = ts.into_iter().map(rat).collect();
        let expected = (&t[0] - &t[2]) * (&t[1] - &t[3]) / ((&t[0] - &t[3]) * (&t[1] - &t[2]));
        let nodes = Nodes::from_labels(&[2], 4).unwrap();
        let pts = quadruple_points(Family::D, 4, &nodes, &t).unwrap();
        prop_assert_eq!(quadruple_cross_ratio(&pts).unwrap(), expected.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: RationalMatrix = FormSpace::orthogonal(8).random_group_element(&mut rng);
        let moved: Vec<_> = pts.iter().map(|f| f.iter().map(|s| s.transform(&g)).collect()).collect();
        prop_assert_eq!(quadruple_cross_ratio(&moved).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn triple_reduction_lands_in_the_open_set(l in prop::sample::select(vec![3usize, 5]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_triple_point(l, &mut rng);
        let r = reduce_triple_d_odd(l, &p).unwrap();
        prop_assert!(r.preserves_form && r.matches_reference);
        prop_assert!(check_conditions(l, &p.transform(&r.b)).is_ok());
    }
}

//! Independent checks of root systems and Chevalley bases.

mod common;

use std::collections::BTreeSet;

use flagrank_core::chevalley::{build_algebra, random_group_element, ChevalleyAlgebra};
use flagrank_core::rootsystem::{build_root_system, minus_w0_involution, Family, RootSystem, SimpleType};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn system(t: SimpleType) -> RootSystem {
    build_root_system(t).unwrap()
}

/// All roots as the Weyl orbit of the simple roots, by closure under reflections.
fn reflection_closure(rs: &RootSystem) -> BTreeSet<Vec<i64>> {
    let l = rs.rank();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..l)
        .map(|i| {
            let mut v = vec![0; l];
            v[i] = 1;
            v
        })
        .collect();
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for i in 0..l {
            let w = rs.reflect(&v, i);
            if !seen.contains(&w) {
                stack.push(w);
            }
        }
    }
    seen
}

#[test]
fn root_counts_match_reflection_orbits() {
    for t in SimpleType::catalogue(8) {
        let rs = system(t);
        let orbit = reflection_closure(&rs);
        assert_eq!(orbit.len(), 2 * rs.num_positive(), "{t}");
        assert_eq!(rs.num_positive(), t.expected_positive_roots(), "{t}");
        for r in rs.positive_roots() {
            assert!(orbit.contains(&r.0), "{t}");
        }
    }
}

/// `-w_0` from a reduced walk of `2 rho` to `-2 rho`.
fn minus_w0_by_longest_element(rs: &RootSystem) -> Vec<usize> {
    let l = rs.rank();
    let mut v = vec![0i64; l];
    for r in rs.positive_roots() {
        for (a, b) in v.iter_mut().zip(&r.0) {
            *a += b;
        }
    }
    let mut word = Vec::new();
    while let Some(j) = (0..l).find(|&j| rs.pairing(&v, j) > 0) {
        v = rs.reflect(&v, j);
        word.push(j);
    }
    assert_eq!(word.len(), rs.num_positive());
    (0..l)
        .map(|i| {
            let mut a = vec![0i64; l];
            a[i] = 1;
            for &j in &word {
                a = rs.reflect(&a, j);
            }
            let pos = a.iter().position(|&c| c != 0).unwrap();
            assert_eq!(a[pos], -1);
            assert_eq!(a.iter().filter(|&&c| c != 0).count(), 1);
            pos
        })
        .collect()
}

#[test]
fn diagram_involution_matches_longest_element() {
    let mut types = SimpleType::catalogue(8);
    types.push(SimpleType::new(Family::D, 3).unwrap());
    for t in types {
        let rs = system(t);
        assert_eq!(minus_w0_involution(&rs), minus_w0_by_longest_element(&rs), "{t}");
    }
}

#[test]
fn jacobi_exhaustive_up_to_rank_four() {
    for t in SimpleType::catalogue(4) {
        let alg = build_algebra(&system(t));
        let d = alg.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    assert!(common::jacobi_holds(&alg, i, j, k), "{t}: ({i},{j},{k})");
                }
            }
        }
    }
}

#[test]
fn jacobi_sampled_ranks_five_to_eight() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let types: Vec<SimpleType> = SimpleType::catalogue(8).into_iter().filter(|t| t.rank >= 5).collect();
    let algebras: Vec<ChevalleyAlgebra> = types.iter().map(|&t| build_algebra(&system(t))).collect();
    for n in 0..10_000 {
        let alg = &algebras[n % algebras.len()];
        let d = alg.dim();
        let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
        assert!(common::jacobi_holds(alg, i, j, k), "{}: ({i},{j},{k})", alg.root_system().simple_type());
    }
}

#[test]
fn structure_constants_are_root_string_lengths() {
    for t in SimpleType::catalogue(8) {
        let rs = system(t);
        let alg = build_algebra(&rs);
        let mut all: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.0.clone()).collect();
        all.extend(rs.positive_roots().iter().map(|r| r.neg().0));
        for r in &all {
            for s in &all {
                let sum: Vec<i64> = r.iter().zip(s).map(|(a, b)| a + b).collect();
                let n = alg.structure_constant(r, s);
                if sum.iter().all(|&c| c == 0) || !rs.is_root(&sum) {
                    assert_eq!(n, 0);
                    continue;
                }
                let mut p = 0;
                let mut probe = s.clone();
                loop {
                    for (c, a) in probe.iter_mut().zip(r) {
                        *c -= a;
                    }
                    if rs.is_root(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                assert_eq!(n.abs(), p + 1, "{t}: N({r:?},{s:?})");
                assert_eq!(alg.structure_constant(s, r), -n);
            }
        }
    }
}

#[test]
fn g2_has_all_three_constant_sizes() {
    let rs = system(SimpleType::new(Family::G, 2).unwrap());
    let alg = build_algebra(&rs);
    let sizes: BTreeSet<i64> = rs
        .positive_roots()
        .iter()
        .flat_map(|a| rs.positive_roots().iter().map(move |b| (a, b)))
        .map(|(a, b)| alg.structure_constant(&a.0, &b.0).abs())
        .filter(|&v| v != 0)
        .collect();
    assert_eq!(sizes, [1, 2, 3].into_iter().collect());
}

#[test]
fn group_elements_are_bracket_automorphisms() {
    let types = ["A2", "B3", "C3", "D4", "G2"];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checks = 0;
    for (n, name) in types.iter().enumerate() {
        let alg = build_algebra(&system(name.parse().unwrap()));
        let d = alg.dim();
        for s in 0..4u64 {
            let g = random_group_element(&alg, 1000 * n as u64 + s, 2 * alg.rank(), 2).unwrap();
            for _ in 0..50 {
                let a = common::random_element(&mut rng, d);
                let b = common::random_element(&mut rng, d);
                let lhs = g.apply(&alg.bracket(&a, &b).unwrap());
                let rhs = alg.bracket(&g.apply(&a), &g.apply(&b)).unwrap();
                assert_eq!(lhs, rhs, "{name}");
                checks += 1;
            }
        }
    }
    assert_eq!(checks, 1000);
}

#[test]
fn ad_is_a_derivation_of_the_bracket() {
    let alg = build_algebra(&system("F4".parse().unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let x = common::random_element(&mut rng, alg.dim());
        let a = common::random_element(&mut rng, alg.dim());
        let b = common::random_element(&mut rng, alg.dim());
        let ad = alg.ad(&x).unwrap();
        let lhs = ad.apply(&alg.bracket(&a, &b).unwrap());
        let rhs = alg.bracket(&ad.apply(&a), &b).unwrap().add(&alg.bracket(&a, &ad.apply(&b)).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.coeffs.len(), 52);
    }
}

//! Helpers shared by the integration test targets.

use std::collections::HashMap;

use flagrank_core::chevalley::{ChevalleyAlgebra, LieElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn sparse_bracket(alg: &ChevalleyAlgebra, a: &HashMap<usize, i64>, b: &HashMap<usize, i64>) -> HashMap<usize, i64> {
    let mut out: HashMap<usize, i64> = HashMap::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            for &(k, c) in alg.basis_bracket(i, j) {
                *out.entry(k).or_default() += x * y * c;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn jacobi_holds(alg: &ChevalleyAlgebra, i: usize, j: usize, k: usize) -> bool {
    let e = |n: usize| -> HashMap<usize, i64> { [(n, 1)].into_iter().collect() };
    let mut total: HashMap<usize, i64> = HashMap::new();
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        let inner = sparse_bracket(alg, &e(b), &e(c));
        for (n, v) in sparse_bracket(alg, &e(a), &inner) {
            *total.entry(n).or_default() += v;
        }
    }
    total.values().all(|&v| v == 0)
}

/// Integer coefficients in `[-3, 3]`.
pub fn random_element(rng: &mut ChaCha8Rng, d: usize) -> LieElement {
    LieElement::from_i64(&(0..d).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())
}

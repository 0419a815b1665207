//! Normal form for three pairwise transversal Lagrangian subspaces of an even
//! orthogonal space: a basis with Gram matrix `Q` in which the three
//! subspaces are spanned by fixed coordinate combinations.

use rand::Rng;
use serde::Serialize;

use super::{antidiagonal, random_invertible, symplectic_pairs, ClassicalError, FormKind, FormSpace, Subspace};
use crate::exactlinalg::{rat, RationalMatrix};

#[derive(Debug, Clone, Serialize)]
pub struct TransversalBasis {
    /// Columns `q_1, .., q_{2k}`.
    pub basis: RationalMatrix,
    pub m1: RationalMatrix,
    pub m2: RationalMatrix,
    pub m3: RationalMatrix,
}

/// `[I; 0]`, `[0; I]` and `[I; diag(-I, I)]` for `2k x k`.
pub fn fixed_matrices(k: usize) -> (RationalMatrix, RationalMatrix, RationalMatrix) {
    let m1 = RationalMatrix::from_fn(2 * k, k, |i, j| if i == j { rat(1) } else { rat(0) });
    let m2 = RationalMatrix::from_fn(2 * k, k, |i, j| if i == j + k { rat(1) } else { rat(0) });
    let m3 = RationalMatrix::from_fn(2 * k, k, |i, j| {
        if i == j {
            rat(1)
        } else if i == j + k {
            if j < k / 2 { rat(-1) } else { rat(1) }
        } else {
            rat(0)
        }
    });
    (m1, m2, m3)
}

pub fn transversal_basis(space: &FormSpace, u: [&Subspace; 3]) -> Result<TransversalBasis, ClassicalError> {
    if space.kind != FormKind::Symmetric || space.dim % 2 != 0 {
        return Err(ClassicalError::Dimension("need an even-dimensional orthogonal space".into()));
    }
    let k = space.dim / 2;
    for (i, s) in u.iter().enumerate() {
        if s.ambient() != space.dim || s.dim() != k {
            return Err(ClassicalError::Dimension(format!("U{} must have dimension {k} in K^{}", i + 1, space.dim)));
        }
    }
    if k % 2 == 1 {
        return Err(ClassicalError::OddDimension(k));
    }
    for (i, s) in u.iter().enumerate() {
        if !s.is_isotropic(space) {
            return Err(ClassicalError::NotIsotropic(i + 1));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if u[i].intersect(u[j]).dim() != 0 {
            return Err(ClassicalError::Intersecting(i + 1, j + 1));
        }
    }
    let (b1, b2) = (u[0].basis(), u[1].basis());

    // U3 = graph of A: U1 -> U2; in U1-coordinates A x = b2 D C^{-1} x
    let coords = b1.hstack(b2).inverse()?;
    let cd = &coords * u[2].basis();
    let c = cd.submatrix(&(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
    let d = cd.submatrix(&(k..2 * k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
    let a = &(b2 * &d) * &c.inverse()?;

    // (v1, v2)_A = (v1, A v2), skew and nondegenerate on U1
    let skew = &(&b1.transpose() * &space.gram) * &a;
    debug_assert!(skew.is_antisymmetric());
    let (pairs, rest) = symplectic_pairs(&skew, (0..k).map(|i| super::unit(k, i)).collect());
    if !rest.is_empty() || pairs.len() * 2 != k {
        return Err(ClassicalError::Degenerate("the graph form is degenerate".into()));
    }
    let mut p = vec![Vec::new(); k];
    for (i, (e, f)) in pairs.into_iter().enumerate() {
        p[i] = e;
        p[k - 1 - i] = f;
    }
    let pm = RationalMatrix::from_columns(k, &p);
    let low = b1 * &pm;
    let high = &a * &pm;
    let n = 2 * k;
    let basis = RationalMatrix::from_fn(n, n, |r, j| {
        if j < k {
            low.get(r, j).clone()
        } else {
            let jj = j - k;
            if jj < k / 2 { -high.get(r, jj).clone() } else { high.get(r, jj).clone() }
        }
    });
    let (m1, m2, m3) = fixed_matrices(k);
    let out = TransversalBasis { basis, m1, m2, m3 };
    if !verify(space, u, &out) {
        return Err(ClassicalError::Degenerate("constructed basis fails verification".into()));
    }
    Ok(out)
}

/// Gram matrix is `Q` and `basis * M_i` spans `U_i`.
pub fn verify(space: &FormSpace, u: [&Subspace; 3], b: &TransversalBasis) -> bool {
    let gram = &(&b.basis.transpose() * &space.gram) * &b.basis;
    gram == antidiagonal(space.dim)
        && [&b.m1, &b.m2, &b.m3]
            .iter()
            .zip(u)
            .all(|(m, s)| Subspace::new(&(&b.basis * m)).same_as(s))
}

/// Three pairwise transversal Lagrangians in `(K^{2k}, Q)`: two coordinate
/// ones and the graph of `Q_k S` (`S` antisymmetric, invertible), moved by a
/// random group element and given random bases.
pub fn random_transversal_triple(k: usize, rng: &mut impl Rng) -> (FormSpace, [Subspace; 3]) {
    assert!(k % 2 == 0 && k > 0, "needs even k");
    let space = FormSpace::orthogonal(2 * k);
    let s = loop {
        let mut s = RationalMatrix::zeros(k, k);
        for i in 0..k {
            for j in i + 1..k {
                let v = rat(rng.gen_range(-3..=3));
                s.set(i, j, v.clone());
                s.set(j, i, -v);
            }
        }
        if s.rank() == k {
            break s;
        }
    };
    let t = &antidiagonal(k) * &s;
    let graph = RationalMatrix::identity(k).vstack(&t);
    let g = space.random_group_element(rng);
    let mut out = Vec::new();
    for m in [RationalMatrix::identity(k).vstack(&RationalMatrix::zeros(k, k)), RationalMatrix::zeros(k, k).vstack(&RationalMatrix::identity(k)), graph] {
        let moved = &(&g * &m) * &random_invertible(rng, k);
        out.push(Subspace::new(&moved));
    }
    let [a, b, c]: [Subspace; 3] = out.try_into().expect("three subspaces");
    (space, [a, b, c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinate_triple_in_dim_four() {
        let space = FormSpace::orthogonal(4);
        let u1 = Subspace::coordinate(4, &[0, 1]);
        let u2 = Subspace::coordinate(4, &[2, 3]);
        // graph of Q_2 S with S = [[0,1],[-1,0]]
        let u3 = Subspace::new(&RationalMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, 1]]));
        let b = transversal_basis(&space, [&u1, &u2, &u3]).unwrap();
        assert_eq!(&(&b.basis.transpose() * &space.gram) * &b.basis, antidiagonal(4));
        assert!(verify(&space, [&u1, &u2, &u3], &b));
    }

    #[test]
    fn random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in [2, 4] {
            for _ in 0..3 {
                let (space, [a, b, c]) = random_transversal_triple(k, &mut rng);
                let out = transversal_basis(&space, [&a, &b, &c]).unwrap();
                assert!(verify(&space, [&a, &b, &c], &out));
                assert_eq!(out.m3, fixed_matrices(k).2);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let space = FormSpace::orthogonal(4);
        let u1 = Subspace::coordinate(4, &[0, 1]);
        let u2 = Subspace::coordinate(4, &[2, 3]);
        assert_eq!(transversal_basis(&space, [&u1, &u2, &u1]).unwrap_err(), ClassicalError::Intersecting(1, 3));
        let bad = Subspace::coordinate(4, &[0, 3]);
        assert_eq!(transversal_basis(&space, [&u1, &u2, &bad]).unwrap_err(), ClassicalError::NotIsotropic(3));
        let six = FormSpace::orthogonal(6);
        let a = Subspace::coordinate(6, &[0, 1, 2]);
        let b = Subspace::coordinate(6, &[3, 4, 5]);
        assert_eq!(transversal_basis(&six, [&a, &b, &a]).unwrap_err(), ClassicalError::OddDimension(3));
    }
}

//! Fraction-free elimination against naive rational Gaussian elimination and
//! cofactor expansion.

use flagrank_core::exactlinalg::{
    determinant, fmt_rational, kernel_basis, parse_rational, rank, rat, Rational, RationalMatrix,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn naive_rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in 0..m.cols() {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn cofactor_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> =
            a[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i64..=4, 1i64..=3), r * c)
            .prop_map(move |v| RationalMatrix::new(r, c, v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect()).unwrap())
    })
}

fn low_rank_strategy() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=6, 1usize..=6, 1usize..=3).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(-3i64..=3, r * k), prop::collection::vec(-3i64..=3, k * c)).prop_map(move |(a, b)| {
            let left = RationalMatrix::new(r, k, a.into_iter().map(rat).collect()).unwrap();
            let right = RationalMatrix::new(k, c, b.into_iter().map(rat).collect()).unwrap();
            &left * &right
        })
    })
}

fn square_strategy() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec((-5i64..=5, 1i64..=2), n * n)
            .prop_map(move |v| RationalMatrix::new(n, n, v.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn rank_matches_naive(m in matrix_strategy(7, 7)) {
        prop_assert_eq!(rank(&m), naive_rank(&m));
    }

    #[test]
    fn rank_of_products_is_bounded(m in low_rank_strategy()) {
        prop_assert_eq!(rank(&m), naive_rank(&m));
        prop_assert!(rank(&m) <= 3);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated_and_complementary(m in low_rank_strategy()) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len() + rank(&m), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_matches_cofactors(m in square_strategy()) {
        let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        prop_assert_eq!(determinant(&m).unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn determinant_is_multiplicative(a in square_strategy(), seed in 0i64..100) {
        let n = a.rows();
        let b = RationalMatrix::from_fn(n, n, |i, j| rat(((i as i64 * 3 + j as i64 * 5 + seed) % 7) - 3));
        let lhs = determinant(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, determinant(&a).unwrap() * determinant(&b).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(m in square_strategy()) {
        if let Ok(inv) = m.inverse() {
            let id = RationalMatrix::identity(m.rows());
            prop_assert_eq!(&m * &inv, id.clone());
            prop_assert_eq!(&inv * &m, id);
        } else {
            prop_assert!(determinant(&m).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&fmt_rational(&q)), Some(q));
    }
}

#[test]
fn larger_integer_rank_agrees() {
    // 40 x 60 with a planted rank of 17
    let left = RationalMatrix::from_fn(40, 17, |i, j| rat(((i * 31 + j * 17 + i * j) % 11) as i64 - 5));
    let right = RationalMatrix::from_fn(17, 60, |i, j| rat(((i * 13 + j * 7 + 3 * i * j) % 9) as i64 - 4));
    let m = &left * &right;
    assert_eq!(rank(&m), naive_rank(&m));
    assert!(rank(&m) <= 17);
}

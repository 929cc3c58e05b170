//! Rank-based linear algebra checked against exhaustive enumeration.

use std::collections::HashSet;

use proptest::prelude::*;
use qmds_core::gf::Field;
use qmds_core::linalg::{intersection_dim, MatrixGF};

/// Every vector in the column span of `m`, by enumerating all coefficient
/// vectors.
fn column_span(m: &MatrixGF) -> HashSet<Vec<u64>> {
    let q = m.field().modulus();
    let f = m.field();
    let cols = m.cols();
    let mut span = HashSet::new();
    let combos = q.pow(cols as u32);
    for mut code in 0..combos {
        let mut coeffs = vec![0u64; cols];
        for c in coeffs.iter_mut() {
            *c = code % q;
            code /= q;
        }
        let v: Vec<u64> = (0..m.rows())
            .map(|r| {
                coeffs
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (c, &x)| f.add(acc, f.mul(x, m.get(r, c))))
            })
            .collect();
        span.insert(v);
    }
    span
}

/// `log_q |S|`, asserting `|S|` is a power of `q`.
fn log_q(size: usize, q: u64) -> usize {
    let mut dim = 0;
    let mut s = 1usize;
    while s < size {
        s *= q as usize;
        dim += 1;
    }
    assert_eq!(s, size, "span size {size} is not a power of {q}");
    dim
}

fn brute_force_intersection_dim(u: &MatrixGF, v: &MatrixGF) -> usize {
    let su = column_span(u);
    let sv = column_span(v);
    log_q(su.intersection(&sv).count(), u.field().modulus())
}

fn matrix_strategy(
    max_q_index: usize,
    max_rows: usize,
    max_cols: usize,
) -> impl Strategy<Value = MatrixGF> {
    let primes = [2u64, 3, 5, 7, 11, 13];
    (0..max_q_index, 1..=max_rows, 0..=max_cols).prop_flat_map(move |(qi, rows, cols)| {
        let q = primes[qi];
        prop::collection::vec(0..q, rows * cols).prop_map(move |entries| {
            MatrixGF::new(Field::new(q).unwrap(), rows, cols, entries).unwrap()
        })
    })
}

/// Two matrices over the same small field with the same row count.
fn pair_strategy() -> impl Strategy<Value = (MatrixGF, MatrixGF)> {
    let primes = [2u64, 3, 5];
    (0..3usize, 1..=4usize, 0..=3usize, 0..=3usize).prop_flat_map(move |(qi, m, a, b)| {
        let q = primes[qi];
        (
            prop::collection::vec(0..q, m * a),
            prop::collection::vec(0..q, m * b),
        )
            .prop_map(move |(ea, eb)| {
                let f = Field::new(q).unwrap();
                (
                    MatrixGF::new(f, m, a, ea).unwrap(),
                    MatrixGF::new(f, m, b, eb).unwrap(),
                )
            })
    })
}

#[test]
fn brute_force_matches_spec_examples() {
    let f = Field::new(3).unwrap();
    let e1 = MatrixGF::from_rows(f, &[vec![1], vec![0]]).unwrap();
    let e2 = MatrixGF::from_rows(f, &[vec![0], vec![1]]).unwrap();
    assert_eq!(
        brute_force_intersection_dim(&e1, &MatrixGF::identity(f, 2)),
        1
    );
    assert_eq!(brute_force_intersection_dim(&e1, &e2), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn intersection_matches_enumeration((u, v) in pair_strategy()) {
        prop_assert_eq!(intersection_dim(&u, &v).unwrap(), brute_force_intersection_dim(&u, &v));
    }

    #[test]
    fn intersection_is_symmetric((u, v) in pair_strategy()) {
        prop_assert_eq!(intersection_dim(&u, &v).unwrap(), intersection_dim(&v, &u).unwrap());
        prop_assert_eq!(intersection_dim(&u, &u).unwrap(), u.rank());
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix_strategy(6, 6, 6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_matches_span_size(m in matrix_strategy(3, 4, 4)) {
        prop_assert_eq!(m.rank(), log_q(column_span(&m).len(), m.field().modulus()));
    }

    #[test]
    fn inverse_is_two_sided(m in (0..6usize, 1..=6usize).prop_flat_map(|(qi, n)| {
        let q = [2u64, 3, 5, 7, 11, 13][qi];
        prop::collection::vec(0..q, n * n).prop_map(move |e| {
            MatrixGF::new(Field::new(q).unwrap(), n, n, e).unwrap()
        })
    })) {
        match m.invert() {
            Ok(inv) => {
                prop_assert!(inv.mul(&m).unwrap().is_identity());
                prop_assert!(m.mul(&inv).unwrap().is_identity());
            }
            Err(_) => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn rref_pivots_increase(m in matrix_strategy(6, 6, 6)) {
        let (r, pivots) = m.rref();
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (row, &c) in pivots.iter().enumerate() {
            prop_assert_eq!(r.get(row, c), 1);
            for other in 0..r.rows() {
                if other != row {
                    prop_assert_eq!(r.get(other, c), 0);
                }
            }
        }
        for row in pivots.len()..r.rows() {
            prop_assert!(r.row(row).iter().all(|&v| v == 0));
        }
    }
}

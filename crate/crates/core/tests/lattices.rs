mod common;

use ibr_core::lattice::{self, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_hold(m in matrix(6, 9)) {
        for (name, ok) in common::lattice_invariants(&m) {
            prop_assert!(ok, "{} failed for {:?}", name, m);
        }
    }

    #[test]
    fn determinant_agrees(m in matrix(6, 20).prop_filter("square", |m| m.rows() == m.cols())) {
        prop_assert_eq!(lattice::det(&m), common::rational_det(&common::rows_of(&m)));
    }

    #[test]
    fn index_routes_agree(m in matrix(5, 9)) {
        let a = lattice::lattice_index(&m);
        prop_assert_eq!(&a, &lattice::lattice_index_snf(&m));
        let rank = common::rational_rank(&common::rows_of(&m));
        if rank == m.rows() {
            let g = common::minors_gcd(&common::rows_of(&m), rank);
            prop_assert_eq!(a, Some(g));
        } else {
            prop_assert_eq!(a, None);
        }
    }

    #[test]
    fn index_ignores_column_order(m in matrix(5, 9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut cols = m.columns();
        cols.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = IntMatrix::from_columns(m.rows(), &cols);
        prop_assert_eq!(lattice::lattice_index(&m), lattice::lattice_index(&shuffled));
        prop_assert_eq!(lattice::hnf(&m), lattice::hnf(&shuffled));
    }
}

#[test]
fn seeded_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let m = common::random_matrix(&mut rng, 8, 9);
        for (name, ok) in common::lattice_invariants(&m) {
            assert!(ok, "{name} failed for {m:?}");
        }
    }
}

#[test]
fn diagonal_index_is_product() {
    let m = IntMatrix::diagonal(&[2i64, 3, 5]);
    assert_eq!(lattice::lattice_index(&m), Some(BigInt::from(30)));
    assert_eq!(
        lattice::snf(&m).invariants(),
        vec![BigInt::from(1), BigInt::from(1), BigInt::from(30)]
    );
}

#[test]
fn empty_kernel_of_identity() {
    assert!(lattice::integer_kernel(&IntMatrix::identity(4)).is_empty());
    let z = IntMatrix::zeros(2, 3);
    assert_eq!(lattice::integer_kernel(&z).rank(), 3);
}

//! Shared fixtures for the criterion benchmarks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotor_core::IntMatrix;

/// Dense random integer matrix with entries in `-bound..=bound`.
pub fn random_int_matrix(n: usize, bound: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    IntMatrix::from_rows(
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect(),
    )
    .expect("rows are rectangular")
}

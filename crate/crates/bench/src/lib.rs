//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use carlitz::{Field, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).expect("prime power"))
}

/// A reproducible pseudo-random permutation of `0..q`.
pub fn random_permutation(q: u32, seed: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images: Vec<u32> = (0..q).collect();
    images.shuffle(&mut rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

//! Shared input generators for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use klc_core::PeriodicSequence;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xbe7c)
}

/// Random single-word sequence indices at exponent `n <= 6`.
pub fn random_indices(n: u32, count: usize) -> Vec<u64> {
    let mask = if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1u64 << n)) - 1
    };
    let mut rng = rng();
    (0..count).map(|_| rng.gen::<u64>() & mask).collect()
}

/// Random sequence of any supported exponent.
pub fn random_sequence(n: u32) -> PeriodicSequence {
    let mut rng = rng();
    let period = 1u64 << n;
    PeriodicSequence::from_bits(n, (0..period).map(|_| rng.gen::<bool>()))
}

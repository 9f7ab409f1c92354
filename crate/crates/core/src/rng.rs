//! The pinned pseudo-random generator.
//!
//! Every seeded operation in this crate uses ChaCha8 (`rand_chacha`) seeded
//! through `SeedableRng::seed_from_u64`, and draws only through the helpers
//! below, which consume whole `u64` words. Given the same seed the output is
//! identical on every platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type Generator = ChaCha8Rng;

pub fn generator(seed: u64) -> Generator {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generator on an independent stream, e.g. one per player.
pub fn generator_on_stream(seed: u64, stream: u64) -> Generator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integer in `0..bound` (Lemire's multiply-and-reject).
pub fn below(rng: &mut Generator, bound: u64) -> u64 {
    assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let x = rng.next_u64();
        let wide = (x as u128) * (bound as u128);
        if (wide as u64) >= threshold {
            return (wide >> 64) as u64;
        }
    }
}

/// `count` independent fair bits packed into the low bits of a word.
pub fn fair_bits(rng: &mut Generator, count: u32) -> u64 {
    debug_assert!(count <= 64);
    match count {
        0 => 0,
        64 => rng.next_u64(),
        c => rng.next_u64() & ((1u64 << c) - 1),
    }
}

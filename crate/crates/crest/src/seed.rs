//! Deterministic seed derivation.
//!
//! All randomness flows through ChaCha8 generators seeded by 64-bit values.
//! Sub-streams (per trial, per receiver, per pilot count) are derived with
//! [`derive()`]: XOR the parent seed with the stream index, then apply the
//! splitmix64 finalizer. The rule is part of the output contract — identical
//! seeds reproduce experiments byte for byte.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// splitmix64 finalizer: a bijective 64-bit mix.
pub fn mix(seed: u64) -> u64 {
    let mut z = seed;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a sub-stream seed: `mix(master XOR index)`.
pub fn derive(master: u64, index: u64) -> u64 {
    mix(master ^ index)
}

/// Seeded generator for a given 64-bit seed.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draw one circularly-symmetric complex Gaussian CN(0, variance):
/// independent real and imaginary parts, each N(0, variance/2).
pub fn complex_gaussian<R: Rng>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance * 0.5).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

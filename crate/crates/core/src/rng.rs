//! Counter-derived random streams.
//!
//! Every replication draws from its own ChaCha8 stream selected by
//! `(seed, family, replication)`. `family` separates independent samples
//! inside one experiment (for instance the passage-time sample and the
//! supremum sample of the limit-law check).

use std::f64::consts::PI;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type ReplicationRng = ChaCha8Rng;

// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random stream for one replication.
pub fn replication_stream(seed: u64, family: u64, replication: u64) -> ReplicationRng {
    let key = mix64(seed ^ mix64(family.wrapping_add(0x9e37_79b9_7f4a_7c15)));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(replication);
    rng
}

/// Uniform deviate on the open interval (0, 1).
#[inline]
pub fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}

/// The `(u, e)` pair consumed by the stable sampler: `u` uniform on
/// `(-π/2, π/2)`, `e` standard exponential.
#[inline]
pub fn stable_deviates<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let u = PI * (open01(rng) - 0.5);
    let e = -open01(rng).ln();
    (u, e)
}

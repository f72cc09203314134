//! Seeded randomness.
//!
//! Every random choice in the crate draws from a PCG-XSH-RR 64/32 generator
//! whose state comes from the user seed and whose stream comes from a tag
//! naming the consumer, so independent consumers never share a sequence.

use rand_pcg::Pcg32;

pub type Rng = Pcg32;

/// 64-bit FNV-1a.
fn fnv1a(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn seeded(seed: u64, tag: &str) -> Rng {
    Pcg32::new(seed ^ 0x853c_49e6_748f_ea9b, fnv1a(tag))
}

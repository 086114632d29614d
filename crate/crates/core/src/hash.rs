//! Counter-based 64-bit hashing used to derive reproducible randomness
//! (scramble permutations, replicate seeds) without storing state.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
pub fn hash2(a: u64, b: u64) -> u64 {
    mix64(mix64(a) ^ b.wrapping_mul(GOLDEN).rotate_left(17))
}

#[inline]
pub fn hash3(a: u64, b: u64, c: u64) -> u64 {
    hash2(hash2(a, b), c)
}

/// Seed of replicate `index` derived from a master seed.
pub fn replicate_seed(master: u64, index: u64) -> u64 {
    hash2(master ^ 0x5EED_5EED_5EED_5EED, index)
}

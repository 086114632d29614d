//! Digit scrambles of base-2 nets, operating on the 64-bit digit expansion
//! of one coordinate.

use crate::hash::{hash2, hash3, mix64};

const TAIL_TAG: u64 = 0x7A11_7A11_7A11_7A11;

fn coord_key(seed: u64, dim: usize) -> u64 {
    hash2(seed, dim as u64)
}

#[inline]
fn top_mask(depth: u32) -> u64 {
    if depth == 0 {
        0
    } else {
        !0u64 << (64 - depth)
    }
}

/// Nested uniform scramble of one coordinate.
///
/// The flip applied to digit `k` is a hash of the node `(k, first k input
/// digits)` of the permutation tree, so no tree is stored. Below the first
/// `resolution` digits (and below the last nonzero input digit) each point
/// sits alone in its subtree; all remaining flips along that path are
/// drawn from one hash of the node where it became alone.
pub fn owen_digits(x: u64, seed: u64, dim: usize, resolution: u32, depth: u32) -> u64 {
    let key = coord_key(seed, dim);
    let significant = 64 - x.trailing_zeros().min(64);
    let cut = significant.max(resolution).min(depth);
    let mut out = 0u64;
    for k in 0..cut {
        let prefix = if k == 0 { 0 } else { x >> (64 - k) };
        let flip = hash3(key, k as u64, prefix) & 1;
        let bit = ((x >> (63 - k)) & 1) ^ flip;
        out |= bit << (63 - k);
    }
    if cut < depth {
        let prefix = if cut == 0 { 0 } else { x >> (64 - cut) };
        let tail = hash3(key ^ TAIL_TAG, cut as u64, prefix);
        // the input has no digits below `cut`, so the output tail is the flips
        out |= (tail >> cut) & top_mask(depth) & !top_mask(cut);
    }
    out
}

/// Random lower-triangular unit-diagonal digit matrix plus digital shift for
/// one coordinate.
#[derive(Debug, Clone)]
pub struct LinearScrambler {
    columns: Vec<u64>,
    shift: u64,
}

impl LinearScrambler {
    pub fn new(seed: u64, dim: usize, depth: u32) -> Self {
        let key = coord_key(seed ^ 0x11AE_A511_0000_0001, dim);
        let mask = top_mask(depth);
        let columns = (0..depth)
            .map(|c| {
                // rows strictly below the diagonal are random
                let below = mix64(hash2(key, c as u64)) & (mask & !top_mask(c + 1));
                below | (1u64 << (63 - c))
            })
            .collect();
        let shift = hash2(key, u64::MAX) & mask;
        LinearScrambler { columns, shift }
    }

    pub fn apply(&self, x: u64) -> u64 {
        let mut out = self.shift;
        for (c, col) in self.columns.iter().enumerate() {
            if (x >> (63 - c)) & 1 == 1 {
                out ^= col;
            }
        }
        out
    }
}

/// Maps a digit expansion to a float in [0,1), keeping the leading 53 digits.
#[inline]
pub fn digits_to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn owen_is_a_bijection_on_prefixes() {
        // any scramble permutes the 2^k cells at level k
        for seed in 0..20 {
            let mut seen: Vec<u64> = (0..64u64)
                .map(|i| owen_digits(i << 58, seed, 0, 6, 6) >> 58)
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn owen_shares_flips_along_common_prefix() {
        // two inputs agreeing in the first 3 digits agree in the first 3 output digits
        let a = 0b1011_0000u64 << 56;
        let b = 0b1010_0000u64 << 56;
        for seed in 0..20 {
            let oa = owen_digits(a, seed, 2, 8, 52);
            let ob = owen_digits(b, seed, 2, 8, 52);
            assert_eq!(oa >> 61, ob >> 61);
            assert_ne!((oa >> 60) & 1, (ob >> 60) & 1);
        }
    }

    #[test]
    fn depth_truncates() {
        let y = owen_digits(1 << 63, 9, 0, 1, 20);
        assert_eq!(y & !top_mask(20), 0);
        let lin = LinearScrambler::new(9, 0, 20);
        assert_eq!(lin.apply(1 << 63) & !top_mask(20), 0);
    }

    #[test]
    fn linear_is_a_bijection_on_prefixes() {
        let lin = LinearScrambler::new(3, 1, 8);
        let mut seen: Vec<u64> = (0..256u64).map(|i| lin.apply(i << 56) >> 56).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..256).collect::<Vec<_>>());
    }

    #[test]
    fn unit_conversion() {
        assert_eq!(digits_to_unit(0), 0.0);
        assert_eq!(digits_to_unit(1 << 63), 0.5);
        assert!(digits_to_unit(u64::MAX) < 1.0);
    }
}

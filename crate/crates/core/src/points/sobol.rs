//! Base-2 Sobol generator matrices.
//!
//! Column `k` of the generator matrix for one coordinate is stored as a
//! `u64` whose most significant bit is the first base-2 digit, so point `i`
//! is the XOR of the columns selected by the bits of `i`.

use super::direction_numbers::DIRECTION_NUMBERS;
use crate::error::{Error, Result};

/// Number of coordinates with direction numbers.
pub const MAX_DIM: usize = DIRECTION_NUMBERS.len() + 1;

/// Largest supported `m` (2^m points).
pub const MAX_M: u32 = 32;

/// Generator columns `V[0..m]` for coordinate `dim` (zero based).
pub fn direction_vectors(dim: usize, m: u32) -> Result<Vec<u64>> {
    if dim >= MAX_DIM {
        return Err(Error::NoGeneratorMatrices {
            dim: dim + 1,
            base: 2,
        });
    }
    let m = m as usize;
    if dim == 0 {
        return Ok((0..m).map(|k| 1u64 << (63 - k)).collect());
    }
    let (s, a, init) = DIRECTION_NUMBERS[dim - 1];
    let s = s as usize;
    // m_k are odd integers below 2^k
    let mut mk: Vec<u64> = Vec::with_capacity(m.max(s));
    for k in 0..m {
        if k < s {
            mk.push(init[k]);
        } else {
            let mut val = mk[k - s] ^ (mk[k - s] << s);
            for i in 1..s {
                if (a >> (s - 1 - i)) & 1 == 1 {
                    val ^= mk[k - i] << i;
                }
            }
            mk.push(val);
        }
    }
    Ok(mk
        .iter()
        .enumerate()
        .map(|(k, &v)| v << (63 - k))
        .collect())
}

/// Digits of point `index` in one coordinate.
#[inline]
pub fn point_bits(columns: &[u64], index: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = index;
    let mut k = 0;
    while rest != 0 {
        if rest & 1 == 1 {
            out ^= columns[k];
        }
        rest >>= 1;
        k += 1;
    }
    out
}

//! Point sets in the unit cube: plain Monte Carlo, base-2 digital nets and
//! their randomizations.

mod balance;
mod direction_numbers;
mod sampler;
mod scramble;
mod sobol;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use balance::{elementary_interval_balance, for_each_composition, t_value};
pub use sampler::{sampler_registry, make_sampler, Sampler, SamplerParams};
pub use sobol::{MAX_DIM, MAX_M};

use crate::error::{Error, Result};
use scramble::{digits_to_unit, owen_digits, LinearScrambler};

/// Default number of scrambled digits; one double mantissa.
pub const DEFAULT_DIGIT_DEPTH: u32 = 52;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Mc,
    Net,
    OwenScrambled,
    LinearScrambled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScrambleMethod {
    OwenNested,
    LinearDigitalShift,
}

/// `n` points in `[0,1)^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    provenance: Provenance,
    base: Option<u32>,
    m: Option<u32>,
    seed: Option<u64>,
}

impl PointSet {
    /// Wraps caller-supplied coordinates as an MC-provenance set.
    pub fn from_rows(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates do not form rows of length {dim}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|x| !(0.0..1.0).contains(*x)) {
            return Err(Error::InvalidArgument(format!(
                "coordinate {bad} outside [0,1)"
            )));
        }
        Ok(PointSet {
            dim,
            coords,
            provenance: Provenance::Mc,
            base: None,
            m: None,
            seed: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn base(&self) -> Option<u32> {
        self.base
    }

    /// `log_base(n)` for nets.
    pub fn m(&self) -> Option<u32> {
        self.m
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }
}

fn is_prime(b: u32) -> bool {
    b >= 2 && (2..).take_while(|k| k * k <= b).all(|k| !b.is_multiple_of(k))
}

fn check_net_args(dim: usize, m: u32, base: u32) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dim must be at least 1".into()));
    }
    if !is_prime(base) {
        return Err(Error::InvalidArgument(format!("base {base} is not prime")));
    }
    if base != 2 || dim > MAX_DIM {
        return Err(Error::NoGeneratorMatrices { dim, base });
    }
    if m > MAX_M {
        return Err(Error::InvalidArgument(format!(
            "2^{m} points exceeds the supported 2^{MAX_M}"
        )));
    }
    Ok(())
}

/// Digit expansions of the unscrambled net, row-major.
fn net_digits(dim: usize, m: u32) -> Result<Vec<u64>> {
    let columns = (0..dim)
        .map(|j| sobol::direction_vectors(j, m))
        .collect::<Result<Vec<_>>>()?;
    let n = 1usize << m;
    let mut out = vec![0u64; n * dim];
    out.par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
        for (x, cols) in row.iter_mut().zip(&columns) {
            *x = sobol::point_bits(cols, i as u64);
        }
    });
    Ok(out)
}

/// The first `base^m` points of the Sobol sequence, in natural order.
pub fn generate_net(dim: usize, m: u32, base: u32) -> Result<PointSet> {
    check_net_args(dim, m, base)?;
    let coords = net_digits(dim, m)?.into_iter().map(digits_to_unit).collect();
    Ok(PointSet {
        dim,
        coords,
        provenance: Provenance::Net,
        base: Some(base),
        m: Some(m),
        seed: None,
    })
}

/// Randomizes an unscrambled net. `digit_depth` digits are randomized
/// (at most 64; only the leading 53 survive conversion to `f64`).
pub fn scramble(
    net: &PointSet,
    method: ScrambleMethod,
    seed: u64,
    digit_depth: u32,
) -> Result<PointSet> {
    match net.provenance {
        Provenance::Net => {}
        Provenance::OwenScrambled | Provenance::LinearScrambled => {
            return Err(Error::AlreadyScrambled)
        }
        Provenance::Mc => {
            return Err(Error::InvalidArgument(
                "only digital nets can be scrambled".into(),
            ))
        }
    }
    let m = net.m.expect("nets record m");
    if digit_depth < m || digit_depth > 64 {
        return Err(Error::InvalidArgument(format!(
            "digit_depth {digit_depth} must lie in [m, 64] = [{m}, 64]"
        )));
    }
    let dim = net.dim;
    // recover exact digits; net coordinates are dyadic with at most m digits
    let to_digits = |x: f64| -> u64 { ((x * (1u64 << 53) as f64) as u64) << 11 };
    let coords: Vec<f64> = match method {
        ScrambleMethod::OwenNested => net
            .coords
            .par_iter()
            .enumerate()
            .map(|(k, &x)| digits_to_unit(owen_digits(to_digits(x), seed, k % dim, m, digit_depth)))
            .collect(),
        ScrambleMethod::LinearDigitalShift => {
            let lin: Vec<LinearScrambler> = (0..dim)
                .map(|j| LinearScrambler::new(seed, j, digit_depth))
                .collect();
            net.coords
                .par_iter()
                .enumerate()
                .map(|(k, &x)| digits_to_unit(lin[k % dim].apply(to_digits(x))))
                .collect()
        }
    };
    Ok(PointSet {
        dim,
        coords,
        provenance: match method {
            ScrambleMethod::OwenNested => Provenance::OwenScrambled,
            ScrambleMethod::LinearDigitalShift => Provenance::LinearScrambled,
        },
        base: net.base,
        m: Some(m),
        seed: Some(seed),
    })
}

/// `n` iid uniform points from ChaCha8 seeded with `seed`.
pub fn mc_points(dim: usize, n: usize, seed: u64) -> Result<PointSet> {
    if dim == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "dim and n must be positive (dim={dim}, n={n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * dim).map(|_| rng.random::<f64>()).collect();
    Ok(PointSet {
        dim,
        coords,
        provenance: Provenance::Mc,
        base: None,
        m: None,
        seed: Some(seed),
    })
}

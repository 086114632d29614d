//! Point samplers selectable by name.

use once_cell::sync::Lazy;

use super::{generate_net, mc_points, scramble, PointSet, ScrambleMethod, DEFAULT_DIGIT_DEPTH};
use crate::error::Result;
use crate::registry::Registry;

/// Produces `2^m` points for one replicate.
pub trait Sampler: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether distinct seeds give distinct point sets.
    fn is_randomized(&self) -> bool {
        true
    }

    fn sample(&self, dim: usize, m: u32, seed: u64) -> Result<PointSet>;
}

#[derive(Debug, Clone, Copy)]
pub struct SamplerParams {
    pub digit_depth: u32,
}

impl Default for SamplerParams {
    fn default() -> Self {
        SamplerParams {
            digit_depth: DEFAULT_DIGIT_DEPTH,
        }
    }
}

struct Mc;

impl Sampler for Mc {
    fn name(&self) -> &'static str {
        "mc"
    }
    fn sample(&self, dim: usize, m: u32, seed: u64) -> Result<PointSet> {
        mc_points(dim, 1usize << m, seed)
    }
}

struct Net;

impl Sampler for Net {
    fn name(&self) -> &'static str {
        "net"
    }
    fn is_randomized(&self) -> bool {
        false
    }
    fn sample(&self, dim: usize, m: u32, _seed: u64) -> Result<PointSet> {
        generate_net(dim, m, 2)
    }
}

struct Scrambled {
    name: &'static str,
    method: ScrambleMethod,
    depth: u32,
}

impl Sampler for Scrambled {
    fn name(&self) -> &'static str {
        self.name
    }
    fn sample(&self, dim: usize, m: u32, seed: u64) -> Result<PointSet> {
        scramble(&generate_net(dim, m, 2)?, self.method, seed, self.depth)
    }
}

static REGISTRY: Lazy<Registry<SamplerParams, dyn Sampler>> = Lazy::new(|| {
    let mut reg: Registry<SamplerParams, dyn Sampler> = Registry::new("sampler");
    reg.register("mc", "iid uniform points (ChaCha8)", |_| Ok(Box::new(Mc)));
    reg.register("net", "unscrambled Sobol net", |_| Ok(Box::new(Net)));
    reg.register("owen", "Sobol net with nested uniform scramble", |p| {
        Ok(Box::new(Scrambled {
            name: "owen",
            method: ScrambleMethod::OwenNested,
            depth: p.digit_depth,
        }))
    });
    reg.register(
        "linear",
        "Sobol net with nested linear scramble and digital shift",
        |p| {
            Ok(Box::new(Scrambled {
                name: "linear",
                method: ScrambleMethod::LinearDigitalShift,
                depth: p.digit_depth,
            }))
        },
    );
    reg
});

pub fn sampler_registry() -> &'static Registry<SamplerParams, dyn Sampler> {
    &REGISTRY
}

pub fn make_sampler(name: &str, params: &SamplerParams) -> Result<Box<dyn Sampler>> {
    REGISTRY.create(name, params)
}

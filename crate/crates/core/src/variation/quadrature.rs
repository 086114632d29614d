//! Tensor Gauss–Legendre rules on meshes refined toward singular faces.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};

/// Where panels cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    /// `2^L` equal panels covering `[0,1]`.
    Uniform,
    /// Dyadic shells `[2^-(k+1), 2^-k]`, `k < L`, covering `[2^-L, 1]`.
    GradedToward0,
    /// Dyadic shells toward both ends, covering `[2^-L, 1 - 2^-L]`.
    GradedTowardBoth,
}

impl Refinement {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Refinement::Uniform),
            "graded0" | "graded-toward-0" => Ok(Refinement::GradedToward0),
            "graded" | "graded-both" | "graded-toward-both" => Ok(Refinement::GradedTowardBoth),
            _ => Err(Error::Parse(format!("unknown refinement {s:?}"))),
        }
    }
}

/// Refinement schedule: one estimate per entry of `depths`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Depth `L` of each level, strictly increasing; the cut-off is `ε = 2^-L`.
    pub depths: Vec<u32>,
    pub refinement: Refinement,
    /// Equal panels per dyadic shell (graded meshes only).
    pub panels_per_shell: usize,
    /// Gauss–Legendre points per panel.
    pub gauss_points: usize,
}

impl QuadratureSpec {
    /// `levels` levels with the default depth step for `refinement`
    /// (1 for uniform meshes, 6 for graded ones).
    pub fn new(refinement: Refinement, levels: usize) -> Self {
        let (start, step) = match refinement {
            Refinement::Uniform => (1, 1),
            _ => (6, 6),
        };
        QuadratureSpec {
            depths: (0..levels as u32).map(|k| start + step * k).collect(),
            refinement,
            panels_per_shell: 1,
            gauss_points: 3,
        }
    }

    pub fn with_depths(refinement: Refinement, depths: Vec<u32>) -> Self {
        QuadratureSpec {
            depths,
            ..QuadratureSpec::new(refinement, 0)
        }
    }

    pub fn with_gauss_points(mut self, g: usize) -> Self {
        self.gauss_points = g;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.depths.is_empty() {
            return Err(Error::InvalidArgument("at least one refinement level".into()));
        }
        if self.depths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("levels must be strictly increasing".into()));
        }
        if self.depths[0] == 0 || *self.depths.last().unwrap() > 1000 {
            return Err(Error::InvalidArgument("depths must lie in 1..=1000".into()));
        }
        if self.gauss_points == 0 || self.panels_per_shell == 0 {
            return Err(Error::InvalidArgument("empty quadrature rule".into()));
        }
        if self.refinement == Refinement::Uniform && *self.depths.last().unwrap() > 16 {
            return Err(Error::InvalidArgument("uniform depth above 16".into()));
        }
        Ok(())
    }

    pub fn epsilon(&self, level: usize) -> f64 {
        0.5f64.powi(self.depths[level] as i32)
    }

    /// Panel edges on `[0,1]` at `level`.
    pub fn breakpoints(&self, level: usize) -> Vec<f64> {
        let depth = self.depths[level];
        match self.refinement {
            Refinement::Uniform => {
                let n = 1usize << depth;
                (0..=n).map(|i| i as f64 / n as f64).collect()
            }
            Refinement::GradedToward0 => {
                let mut edges = vec![];
                for k in (0..depth).rev() {
                    self.split_shell(&mut edges, 0.5f64.powi(k as i32 + 1), 0.5f64.powi(k as i32));
                }
                edges.push(1.0);
                edges
            }
            Refinement::GradedTowardBoth => {
                let mut edges = vec![];
                for k in (1..depth).rev() {
                    self.split_shell(&mut edges, 0.5f64.powi(k as i32 + 1), 0.5f64.powi(k as i32));
                }
                for k in 1..depth {
                    self.split_shell(
                        &mut edges,
                        1.0 - 0.5f64.powi(k as i32),
                        1.0 - 0.5f64.powi(k as i32 + 1),
                    );
                }
                edges.push(1.0 - 0.5f64.powi(depth as i32));
                edges
            }
        }
    }

    fn split_shell(&self, edges: &mut Vec<f64>, lo: f64, hi: f64) {
        let p = self.panels_per_shell;
        for i in 0..p {
            edges.push(lo + (hi - lo) * i as f64 / p as f64);
        }
    }

    /// One-dimensional nodes and weights at `level`.
    pub fn rule(&self, level: usize) -> Vec<(f64, f64)> {
        let gl = GaussLegendre::new(NonZeroUsize::new(self.gauss_points).expect("validated"));
        let edges = self.breakpoints(level);
        let mut out = Vec::with_capacity((edges.len() - 1) * self.gauss_points);
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            for &(x, wt) in gl.as_node_weight_pairs() {
                out.push((a + half * (x + 1.0), half * wt));
            }
        }
        out
    }
}

/// Tensor-product sum of `f` over `rule^k`, `f` receiving the `k` coordinates.
pub fn tensor_integrate<F>(rule: &[(f64, f64)], k: usize, mut f: F) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if k == 0 {
        return f(&[]);
    }
    let n = rule.len();
    let mut idx = vec![0usize; k];
    let mut x: Vec<f64> = vec![rule[0].0; k];
    // partial products of weights for the leading coordinates
    let mut wprefix = vec![1.0; k + 1];
    for i in 0..k {
        wprefix[i + 1] = wprefix[i] * rule[0].1;
    }
    let mut total = 0.0;
    loop {
        total += wprefix[k] * f(&x)?;
        // advance the odometer, last coordinate fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(total);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
        for i in pos..k {
            let (xi, wi) = rule[idx[i]];
            x[i] = xi;
            wprefix[i + 1] = wprefix[i] * wi;
        }
    }
}

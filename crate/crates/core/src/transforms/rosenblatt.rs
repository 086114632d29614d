use super::{
    check_input, check_partial_args, invalid, DomainDescriptor, DomainKind, Transform,
};
use crate::error::Result;
use crate::index_set::MultiIndexSet;
use crate::variation::Refinement;

/// Sequential inversion for the FGM density `1 + θ(1-2x)(1-2y)` on `[0,1]^2`.
///
/// The marginal of `x` is uniform, so `τ_1 = u_1`. Given `x`, with
/// `c = θ(1-2x)`, the conditional CDF is `y + c(y - y²)`, and `τ_2` is its
/// root in `[0,1]`. The map samples from the density itself, so estimates
/// use weight 1.
#[derive(Debug, Clone, Copy)]
pub struct RosenblattFgm {
    theta: f64,
}

impl RosenblattFgm {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_nan() || theta.abs() > 1.0 {
            return Err(invalid(
                "rosenblatt-fgm",
                format!("|theta| <= 1 is required for a valid density (got {theta})"),
            ));
        }
        Ok(RosenblattFgm { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn density(&self, x: f64, y: f64) -> f64 {
        1.0 + self.theta * (1.0 - 2.0 * x) * (1.0 - 2.0 * y)
    }

    pub fn conditional_cdf(&self, y: f64, x: f64) -> f64 {
        y + self.theta * (1.0 - 2.0 * x) * (y - y * y)
    }

    /// Returns `(y, sqrt(D))` where `D = (1+c)² - 4 c u_2`; `sqrt(D)` is
    /// the conditional density at `y`.
    fn solve(&self, u1: f64, u2: f64) -> (f64, f64) {
        let c = self.theta * (1.0 - 2.0 * u1);
        let sq = ((1.0 + c) * (1.0 + c) - 4.0 * c * u2).max(0.0).sqrt();
        // rationalized root, stable as c → 0
        (2.0 * u2 / ((1.0 + c) + sq), sq)
    }
}

impl Transform for RosenblattFgm {
    fn name(&self) -> &str {
        "rosenblatt-fgm"
    }

    fn input_dim(&self) -> usize {
        2
    }

    fn output_dim(&self) -> usize {
        2
    }

    fn domain(&self) -> DomainDescriptor {
        DomainDescriptor::new(DomainKind::UnitSquare, 2)
    }

    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()> {
        check_input(u, 2)?;
        x[0] = u[0];
        x[1] = self.solve(u[0], u[1]).0;
        Ok(())
    }

    /// `∂y/∂u_2 = 1/√D`, `∂y/∂u_1 = 2θ(y - y²)/√D`,
    /// `∂²y/∂u_1∂u_2 = 2θ(1 + c - 2u_2)/D^{3/2}`.
    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
        check_partial_args(self, j, v, u)?;
        if j == 0 {
            return Ok(match v.mask() {
                0 => u[0],
                0b01 => 1.0,
                _ => 0.0,
            });
        }
        let (y, sq) = self.solve(u[0], u[1]);
        let th = self.theta;
        Ok(match v.mask() {
            0 => y,
            0b10 => 1.0 / sq,
            0b01 => 2.0 * th * (y - y * y) / sq,
            _ => {
                let c = th * (1.0 - 2.0 * u[0]);
                2.0 * th * (1.0 + c - 2.0 * u[1]) / (sq * sq * sq)
            }
        })
    }

    fn refinement(&self) -> Refinement {
        Refinement::Uniform
    }
}

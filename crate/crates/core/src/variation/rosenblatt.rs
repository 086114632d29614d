use super::{tensor_integrate, DivergenceVerdict, QuadratureSpec};
use crate::error::Result;
use crate::transforms::RosenblattFgm;

/// Sufficient conditions for the 2-D sequential inversion to be BVHK,
/// evaluated for the FGM family.
#[derive(Debug, Clone)]
pub struct RosenblattConditions {
    /// `∫∫ |Δ log f_1 / dx_1|`; `f_1 ≡ 1` so this is exactly 0.
    pub i1_marginal: f64,
    /// `∫∫ |Δ log f_{1,2} / dx_1|` over the support.
    pub i1_joint: DivergenceVerdict,
    /// `∫ |(∂F_{2|1}/∂x_1) / (∂F_{2|1}/∂x_2)|` along the upper boundary `x_2 = 1`.
    pub i2: DivergenceVerdict,
}

impl RosenblattConditions {
    pub fn i1(&self) -> f64 {
        self.i1_marginal.max(self.i1_joint.last())
    }
}

pub fn rosenblatt_condition_check(theta: f64, q: &QuadratureSpec) -> Result<RosenblattConditions> {
    q.validate()?;
    let t = RosenblattFgm::new(theta)?;
    let mut joint = vec![];
    let mut upper = vec![];
    for level in 0..q.depths.len() {
        let rule = q.rule(level);
        joint.push(tensor_integrate(&rule, 2, |p| {
            let (x, y) = (p[0], p[1]);
            let f = t.density(x, y);
            // total derivative along the level curve F_{2|1}(y|x) = const
            let dy_dx = 2.0 * theta * (y - y * y) / f;
            let d1 = -2.0 * theta * (1.0 - 2.0 * y);
            let d2 = -2.0 * theta * (1.0 - 2.0 * x);
            Ok(((d1 + d2 * dy_dx) / f).abs())
        })?);
        upper.push(tensor_integrate(&rule, 1, |p| {
            let (x, y) = (p[0], 1.0);
            let d_dx = -2.0 * theta * (y - y * y);
            Ok((d_dx / t.density(x, y)).abs())
        })?);
    }
    let eps: Vec<f64> = (0..q.depths.len()).map(|l| q.epsilon(l)).collect();
    Ok(RosenblattConditions {
        i1_marginal: 0.0,
        i1_joint: DivergenceVerdict::from_estimates(joint, eps.clone()),
        i2: DivergenceVerdict::from_estimates(upper, eps),
    })
}

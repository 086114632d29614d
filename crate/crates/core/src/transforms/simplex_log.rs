use super::special::factorial;
use super::{
    check_input, check_partial_args, invalid, ClampCounter, DomainDescriptor, DomainKind,
    Transform, BOUNDARY_EPS,
};
use crate::error::{Error, Result};
use crate::index_set::{MultiIndexSet, MAX_COORDS};
use crate::variation::Refinement;

/// `τ_j(u) = log u_j / Σ_i log u_i`, uniform on the simplex `{x ≥ 0, Σx = 1}` in `R^m`.
#[derive(Debug)]
pub struct SimplexLog {
    m: usize,
    clamps: ClampCounter,
}

impl SimplexLog {
    pub fn new(m: usize) -> Result<Self> {
        if !(2..=MAX_COORDS).contains(&m) {
            return Err(invalid("simplex-log", format!("dim must lie in 2..={MAX_COORDS}")));
        }
        Ok(SimplexLog {
            m,
            clamps: ClampCounter::default(),
        })
    }

    /// `(log u_i)_i` and their sum. Only `u = 0` is clamped; `u = 1` is exact.
    fn logs(&self, u: &[f64]) -> Result<(Vec<f64>, f64)> {
        let logs: Vec<f64> = u
            .iter()
            .map(|&ui| self.clamps.clamp(ui, BOUNDARY_EPS, 1.0).ln())
            .collect();
        let s: f64 = logs.iter().sum();
        if s == 0.0 {
            return Err(Error::SingularInput("all inputs equal 1".into()));
        }
        Ok((logs, s))
    }
}

impl Transform for SimplexLog {
    fn name(&self) -> &str {
        "simplex-log"
    }

    fn input_dim(&self) -> usize {
        self.m
    }

    fn output_dim(&self) -> usize {
        self.m
    }

    fn domain(&self) -> DomainDescriptor {
        DomainDescriptor::new(DomainKind::SimplexT, self.m)
    }

    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()> {
        check_input(u, self.m)?;
        let (logs, s) = self.logs(u)?;
        for (xj, lj) in x.iter_mut().zip(&logs) {
            *xj = lj / s;
        }
        Ok(())
    }

    /// With `L_i = log u_i`, `S = Σ L_i`, `n = |v|`:
    /// for `j ∉ v`, `∂^v τ_j = Π_{i∈v} u_i^{-1} · (-1)^n n! L_j / S^{n+1}`;
    /// for `j ∈ v` and `k = n - 1`, `Π_{i∈v} u_i^{-1} · (-1)^k k! (S - (k+1) L_j) / S^{k+2}`.
    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
        check_partial_args(self, j, v, u)?;
        let (logs, s) = self.logs(u)?;
        let inv_u: f64 = v
            .iter()
            .map(|i| 1.0 / self.clamps.clamp(u[i], BOUNDARY_EPS, 1.0))
            .product();
        let n = v.len();
        let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(if v.contains(j) {
            let k = n - 1;
            inv_u * sign(k) * factorial(k) * (s - (k + 1) as f64 * logs[j]) / s.powi(k as i32 + 2)
        } else {
            inv_u * sign(n) * factorial(n) * logs[j] / s.powi(n as i32 + 1)
        })
    }

    fn refinement(&self) -> Refinement {
        Refinement::GradedTowardBoth
    }

    fn clamp_events(&self) -> u64 {
        self.clamps.get()
    }
}

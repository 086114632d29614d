use super::special::{norm_inv_cdf, norm_pdf, odd_double_factorial};
use super::{
    check_input, check_partial_args, invalid, ClampCounter, DomainDescriptor, DomainKind,
    Transform, BOUNDARY_EPS,
};
use crate::error::{Error, Result};
use crate::index_set::{MultiIndexSet, MAX_COORDS};
use crate::variation::Refinement;

/// `τ_j(u) = z_j / ‖z‖` with `z_i = Φ^{-1}(u_i)`, uniform on the unit sphere in `R^d`.
#[derive(Debug)]
pub struct SphereGauss {
    d: usize,
    clamps: ClampCounter,
}

impl SphereGauss {
    pub fn new(d: usize) -> Result<Self> {
        if !(2..=MAX_COORDS).contains(&d) {
            return Err(invalid("sphere-gauss", format!("dim must lie in 2..={MAX_COORDS}")));
        }
        Ok(SphereGauss {
            d,
            clamps: ClampCounter::default(),
        })
    }

    fn normals(&self, u: &[f64]) -> Result<(Vec<f64>, f64)> {
        let z: Vec<f64> = u
            .iter()
            .map(|&ui| norm_inv_cdf(self.clamps.clamp(ui, BOUNDARY_EPS, 1.0 - BOUNDARY_EPS)))
            .collect();
        let r2: f64 = z.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(Error::SingularInput("zero norm".into()));
        }
        Ok((z, r2))
    }
}

impl Transform for SphereGauss {
    fn name(&self) -> &str {
        "sphere-gauss"
    }

    fn input_dim(&self) -> usize {
        self.d
    }

    fn output_dim(&self) -> usize {
        self.d
    }

    fn domain(&self) -> DomainDescriptor {
        DomainDescriptor::new(DomainKind::Sphere, self.d)
    }

    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()> {
        check_input(u, self.d)?;
        let (z, r2) = self.normals(u)?;
        let r = r2.sqrt();
        for (xj, zj) in x.iter_mut().zip(&z) {
            *xj = zj / r;
        }
        Ok(())
    }

    /// With `R² = Σ z_i²` and `n = |v|`, times `Π_{i∈v} 1/φ(z_i)`:
    /// for `j ∉ v`, `(-1)^n (2n-1)!! z_j Π_{i∈v} z_i / R^{2n+1}`;
    /// for `j ∈ v`, `k = n-1`, `w = v - {j}`:
    /// `(-1)^k (2k-1)!! Π_{i∈w} z_i (Σ_{i≠j} z_i² - 2k z_j²) / R^{2k+3}`.
    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
        check_partial_args(self, j, v, u)?;
        let (z, r2) = self.normals(u)?;
        let r = r2.sqrt();
        let jac: f64 = v.iter().map(|i| 1.0 / norm_pdf(z[i])).product();
        let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let n = v.len();
        Ok(if v.contains(j) {
            let k = n - 1;
            let w: f64 = v.iter().filter(|&i| i != j).map(|i| z[i]).product();
            let rest = r2 - z[j] * z[j];
            jac * sign(k) * odd_double_factorial(k) * w * (rest - 2.0 * k as f64 * z[j] * z[j])
                / r.powi(2 * k as i32 + 3)
        } else {
            let w: f64 = v.iter().map(|i| z[i]).product();
            jac * sign(n) * odd_double_factorial(n) * z[j] * w / r.powi(2 * n as i32 + 1)
        })
    }

    fn face_pin(&self) -> f64 {
        1.0 - BOUNDARY_EPS
    }

    fn refinement(&self) -> Refinement {
        // the partials blow up where z = 0, i.e. at the centre of the cube
        Refinement::Uniform
    }

    fn clamp_events(&self) -> u64 {
        self.clamps.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_at_centre() {
        let t = SphereGauss::new(2).unwrap();
        let err = t.apply(&[0.5, 0.5]).unwrap_err();
        assert_eq!(err.to_string(), "singular input: zero norm");
    }

    #[test]
    fn dominant_coordinate() {
        let t = SphereGauss::new(2).unwrap();
        let x = t.apply(&[0.5 + 1e-9, 0.5]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && x[1] == 0.0);
    }

    #[test]
    fn boundary_clamped() {
        let t = SphereGauss::new(3).unwrap();
        let x = t.apply(&[0.0, 0.3, 0.999]).unwrap();
        assert!(x.iter().all(|v| v.is_finite()));
        assert_eq!(t.clamp_events(), 1);
    }
}

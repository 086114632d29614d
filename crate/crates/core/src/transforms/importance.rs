use super::{DomainDescriptor, Transform, WeightKind};
use crate::error::Result;
use crate::index_set::MultiIndexSet;
use crate::variation::Refinement;

type RatioFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Wraps a sampling map with density `q` and attaches the ratio `p/q`
/// evaluated at `x = τ(u)`.
pub struct ImportanceSampled {
    inner: Box<dyn Transform>,
    ratio: RatioFn,
}

impl ImportanceSampled {
    pub fn new<F>(inner: Box<dyn Transform>, ratio: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        ImportanceSampled {
            inner,
            ratio: Box::new(ratio),
        }
    }
}

impl Transform for ImportanceSampled {
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn input_dim(&self) -> usize {
        self.inner.input_dim()
    }
    fn output_dim(&self) -> usize {
        self.inner.output_dim()
    }
    fn domain(&self) -> DomainDescriptor {
        self.inner.domain()
    }
    fn weight_kind(&self) -> WeightKind {
        WeightKind::Ratio
    }
    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()> {
        self.inner.apply_into(u, x)
    }
    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
        self.inner.partial(j, v, u)
    }
    fn importance_ratio(&self, u: &[f64]) -> Option<f64> {
        self.inner.apply(u).ok().map(|x| (self.ratio)(&x))
    }
    fn face_pin(&self) -> f64 {
        self.inner.face_pin()
    }
    fn refinement(&self) -> Refinement {
        self.inner.refinement()
    }
    fn clamp_events(&self) -> u64 {
        self.inner.clamp_events()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::transforms::Identity;

    #[test]
    fn ratio_weight_is_not_a_jacobian() {
        let t = ImportanceSampled::new(Box::new(Identity::new(2).unwrap()), |x| 2.0 * x[0]);
        assert_eq!(t.weight_kind(), WeightKind::Ratio);
        assert!(matches!(t.jacobian_weight(&[0.5, 0.5]), Err(Error::NotAJacobian(_))));
        assert_eq!(t.importance_ratio(&[0.25, 0.5]), Some(0.5));
    }
}

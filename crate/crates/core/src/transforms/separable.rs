//! Maps whose every component is a product of one-variable factors.
//!
//! For such a component, `∂^v τ_j` is the product of factor derivatives
//! over `v` and factor values elsewhere, and vanishes when `v` names a
//! variable the component does not use.

use std::f64::consts::PI;

use super::special::SinPowerDist;
use super::{check_input, check_partial_args, DomainDescriptor, Transform, WeightKind};
use crate::error::Result;
use crate::index_set::MultiIndexSet;
use crate::variation::Refinement;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Factor {
    /// `u^a`
    Pow(f64),
    /// `1 - u^a`
    OneMinusPow(f64),
    /// `sqrt(1 - u^a)`
    SqrtOneMinusPow(f64),
    /// `cos(2πu)`
    Cos2Pi,
    /// `sin(2πu)`
    Sin2Pi,
    /// `1 - 2u`
    OneMinusTwo,
    /// `2 sqrt(u(1-u))`
    TwoSqrtUOneMinusU,
    /// `sin(π F^{-1}(u))`
    SinPiInv(SinPowerDist),
    /// `cos(π F^{-1}(u))`
    CosPiInv(SinPowerDist),
}

impl Factor {
    pub fn value(&self, u: f64) -> f64 {
        match *self {
            Factor::Pow(a) => u.powf(a),
            Factor::OneMinusPow(a) => 1.0 - u.powf(a),
            Factor::SqrtOneMinusPow(a) => (1.0 - u.powf(a)).max(0.0).sqrt(),
            Factor::Cos2Pi => (2.0 * PI * u).cos(),
            Factor::Sin2Pi => (2.0 * PI * u).sin(),
            Factor::OneMinusTwo => 1.0 - 2.0 * u,
            Factor::TwoSqrtUOneMinusU => 2.0 * (u * (1.0 - u)).sqrt(),
            Factor::SinPiInv(dist) => (PI * dist.inv_cdf(u)).sin(),
            Factor::CosPiInv(dist) => (PI * dist.inv_cdf(u)).cos(),
        }
    }

    pub fn derivative(&self, u: f64) -> f64 {
        match *self {
            Factor::Pow(a) => a * u.powf(a - 1.0),
            Factor::OneMinusPow(a) => -a * u.powf(a - 1.0),
            Factor::SqrtOneMinusPow(a) => {
                -a * u.powf(a - 1.0) / (2.0 * (1.0 - u.powf(a)).sqrt())
            }
            Factor::Cos2Pi => -2.0 * PI * (2.0 * PI * u).sin(),
            Factor::Sin2Pi => 2.0 * PI * (2.0 * PI * u).cos(),
            Factor::OneMinusTwo => -2.0,
            Factor::TwoSqrtUOneMinusU => (1.0 - 2.0 * u) / (u * (1.0 - u)).sqrt(),
            Factor::SinPiInv(dist) => {
                let b = dist.inv_cdf(u);
                PI * (PI * b).cos() / dist.pdf(b)
            }
            Factor::CosPiInv(dist) => {
                let b = dist.inv_cdf(u);
                -PI * (PI * b).sin() / dist.pdf(b)
            }
        }
    }
}

/// One output component: `(input variable, factor)` pairs, each variable at most once.
pub(crate) type Component = Vec<(usize, Factor)>;

type ApplyFn = Box<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;
type WeightFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

pub(crate) struct SeparableMap {
    pub name: &'static str,
    pub m: usize,
    pub domain: DomainDescriptor,
    pub components: Vec<Component>,
    pub refinement: Refinement,
    /// Direct evaluation of the displayed formulas.
    pub apply: ApplyFn,
    /// Jacobian weight, for non-uniform maps.
    pub weight: Option<WeightFn>,
}

impl std::fmt::Debug for SeparableMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeparableMap")
            .field("name", &self.name)
            .field("m", &self.m)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl SeparableMap {
    #[cfg(test)]
    pub fn component_value(&self, j: usize, u: &[f64]) -> f64 {
        self.components[j]
            .iter()
            .map(|(i, f)| f.value(u[*i]))
            .product()
    }
}

impl Transform for SeparableMap {
    fn name(&self) -> &str {
        self.name
    }

    fn input_dim(&self) -> usize {
        self.m
    }

    fn output_dim(&self) -> usize {
        self.components.len()
    }

    fn domain(&self) -> DomainDescriptor {
        self.domain
    }

    fn weight_kind(&self) -> WeightKind {
        if self.weight.is_some() {
            WeightKind::Jacobian
        } else {
            WeightKind::UnitVolume
        }
    }

    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()> {
        check_input(u, self.m)?;
        (self.apply)(u, x);
        Ok(())
    }

    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
        check_partial_args(self, j, v, u)?;
        let comp = &self.components[j];
        let used = MultiIndexSet::from_indices(comp.iter().map(|(i, _)| *i));
        if !v.is_subset(used) {
            return Ok(0.0);
        }
        Ok(comp
            .iter()
            .map(|(i, f)| {
                if v.contains(*i) {
                    f.derivative(u[*i])
                } else {
                    f.value(u[*i])
                }
            })
            .product())
    }

    fn jacobian_weight(&self, u: &[f64]) -> Result<f64> {
        check_input(u, self.m)?;
        Ok(self.weight.as_ref().map_or(1.0, |w| w(u)))
    }

    fn refinement(&self) -> Refinement {
        self.refinement
    }
}

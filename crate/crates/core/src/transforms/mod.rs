//! Maps `τ: [0,1]^m → X ⊂ R^d` with exact mixed partials.
//!
//! Coordinates and components are zero based in the API; `v` in
//! [`Transform::partial`] names the input coordinates differentiated once
//! each, and `v = ∅` evaluates the component itself.

mod catalog;
mod domain;
mod importance;
mod rosenblatt;
mod separable;
mod simplex_log;
pub mod special;
mod sphere_gauss;

use std::sync::atomic::{AtomicU64, Ordering};

use once_cell::sync::Lazy;

pub use domain::{DomainDescriptor, DomainKind, DOMAIN_TOL};
pub use importance::ImportanceSampled;
pub use rosenblatt::RosenblattFgm;
pub use simplex_log::SimplexLog;
pub use sphere_gauss::SphereGauss;

use crate::error::{Error, Result};
use crate::index_set::MultiIndexSet;
use crate::registry::Registry;
use crate::variation::Refinement;

/// Clamp offset for formulas undefined on the cube boundary.
pub const BOUNDARY_EPS: f64 = 1.0 / (1u64 << 53) as f64;

/// How sample values are weighted by the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Uniformity preserving (or sampling directly from the target): weight 1.
    UnitVolume,
    /// Weighted by `d!·J(u)`.
    Jacobian,
    /// Weighted by a caller supplied ratio `p/q` at `τ(u)`.
    Ratio,
}

pub trait Transform: Send + Sync {
    fn name(&self) -> &str;

    /// `m`
    fn input_dim(&self) -> usize;

    /// `d`
    fn output_dim(&self) -> usize;

    fn domain(&self) -> DomainDescriptor;

    fn weight_kind(&self) -> WeightKind {
        WeightKind::UnitVolume
    }

    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()>;

    fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        let mut x = vec![0.0; self.output_dim()];
        self.apply_into(u, &mut x)?;
        Ok(x)
    }

    /// `∂^v τ_j(u)`, or [`Error::OracleUnavailable`] without a closed form.
    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64>;

    /// Jacobian importance weight `J(u)`; 1 for uniformity-preserving maps.
    fn jacobian_weight(&self, _u: &[f64]) -> Result<f64> {
        match self.weight_kind() {
            WeightKind::UnitVolume => Ok(1.0),
            WeightKind::Jacobian => Err(Error::NotAJacobian(format!(
                "{} declares a Jacobian weight but does not evaluate it",
                self.name()
            ))),
            WeightKind::Ratio => Err(Error::NotAJacobian(format!(
                "{} is weighted by a density ratio; use the estimator-level weight",
                self.name()
            ))),
        }
    }

    /// `p/q` at `τ(u)` for ratio-weighted maps.
    fn importance_ratio(&self, _u: &[f64]) -> Option<f64> {
        None
    }

    /// Value used for coordinates pinned to the upper face `u_i = 1`.
    fn face_pin(&self) -> f64 {
        1.0
    }

    /// Mesh grading that suits where the partials blow up.
    fn refinement(&self) -> Refinement {
        Refinement::GradedToward0
    }

    /// Number of inputs clamped into `[ε, 1-ε]` so far.
    fn clamp_events(&self) -> u64 {
        0
    }
}

/// Construction parameters shared by all kinds; each kind reads what it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformParams {
    /// Output dimension `d` (input dimension for `simplex-log`).
    pub dim: usize,
    /// Exponents of `simplex-power`.
    pub a: Vec<f64>,
    /// FGM dependence parameter of `rosenblatt-fgm`.
    pub theta: f64,
}

impl TransformParams {
    pub fn with_dim(dim: usize) -> Self {
        TransformParams {
            dim,
            a: Vec::new(),
            theta: 0.0,
        }
    }

    pub fn power(a: Vec<f64>) -> Self {
        TransformParams {
            dim: a.len(),
            a,
            theta: 0.0,
        }
    }

    pub fn fgm(theta: f64) -> Self {
        TransformParams {
            dim: 2,
            a: Vec::new(),
            theta,
        }
    }
}

impl Default for TransformParams {
    fn default() -> Self {
        TransformParams::with_dim(2)
    }
}

/// Counts boundary clamps.
#[derive(Debug, Default)]
pub(crate) struct ClampCounter(AtomicU64);

impl ClampCounter {
    /// Clamps `u` into `[lo, hi]`, counting a change.
    pub fn clamp(&self, u: f64, lo: f64, hi: f64) -> f64 {
        if u < lo {
            self.0.fetch_add(1, Ordering::Relaxed);
            lo
        } else if u > hi {
            self.0.fetch_add(1, Ordering::Relaxed);
            hi
        } else {
            u
        }
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

pub(crate) fn check_input(u: &[f64], m: usize) -> Result<()> {
    if u.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: u.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_partial_args(
    t: &(impl Transform + ?Sized),
    j: usize,
    v: MultiIndexSet,
    u: &[f64],
) -> Result<()> {
    check_input(u, t.input_dim())?;
    if j >= t.output_dim() {
        return Err(Error::InvalidArgument(format!(
            "component {} outside 1..={}",
            j + 1,
            t.output_dim()
        )));
    }
    if !v.is_subset(MultiIndexSet::full(t.input_dim())) {
        return Err(Error::InvalidArgument(format!(
            "v = {v} is not a subset of 1..={}",
            t.input_dim()
        )));
    }
    Ok(())
}

pub(crate) fn invalid(kind: &str, constraint: impl Into<String>) -> Error {
    Error::InvalidParameter {
        kind: kind.to_string(),
        constraint: constraint.into(),
    }
}

/// The identity map of `[0,1]^d`.
#[derive(Debug, Clone)]
pub struct Identity {
    d: usize,
}

impl Identity {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 || d > crate::index_set::MAX_COORDS {
            return Err(invalid("identity", "dim must lie in 1..=32"));
        }
        Ok(Identity { d })
    }
}

impl Transform for Identity {
    fn name(&self) -> &str {
        "identity"
    }
    fn input_dim(&self) -> usize {
        self.d
    }
    fn output_dim(&self) -> usize {
        self.d
    }
    fn domain(&self) -> DomainDescriptor {
        DomainDescriptor::new(DomainKind::UnitSquare, self.d)
    }
    fn apply_into(&self, u: &[f64], x: &mut [f64]) -> Result<()> {
        check_input(u, self.d)?;
        x.copy_from_slice(u);
        Ok(())
    }
    fn partial(&self, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
        check_partial_args(self, j, v, u)?;
        Ok(match v.len() {
            0 => u[j],
            1 if v.contains(j) => 1.0,
            _ => 0.0,
        })
    }
    fn refinement(&self) -> Refinement {
        Refinement::Uniform
    }
}

static REGISTRY: Lazy<Registry<TransformParams, dyn Transform>> = Lazy::new(|| {
    let mut reg: Registry<TransformParams, dyn Transform> = Registry::new("transform");
    reg.register("identity", "identity map of the unit cube", |p| {
        Ok(Box::new(Identity::new(p.dim)?))
    });
    reg.register(
        "simplex-log",
        "symmetric log map [0,1]^m → standard simplex in R^m",
        |p| Ok(Box::new(SimplexLog::new(p.dim)?)),
    );
    reg.register(
        "sphere-gauss",
        "normalized inverse-Gaussian map [0,1]^d → sphere in R^d",
        |p| Ok(Box::new(SphereGauss::new(p.dim)?)),
    );
    reg.register("fw-ad", "Fang–Wang map [0,1]^d → A_d", |p| {
        Ok(Box::new(catalog::fw_ad(p.dim)?))
    });
    reg.register("fw-bd", "Fang–Wang map [0,1]^d → ball B_d", |p| {
        Ok(Box::new(catalog::fw_bd(p.dim)?))
    });
    reg.register("fw-ud", "Fang–Wang map [0,1]^(d-1) → sphere U_d", |p| {
        Ok(Box::new(catalog::fw_ud(p.dim)?))
    });
    reg.register("fw-vd", "Fang–Wang map [0,1]^d → V_d", |p| {
        Ok(Box::new(catalog::fw_vd(p.dim)?))
    });
    reg.register("fw-td", "Fang–Wang map [0,1]^(d-1) → T_d", |p| {
        Ok(Box::new(catalog::fw_td(p.dim)?))
    });
    reg.register(
        "fw-ud-efficient",
        "Fang–Wang map [0,1]^(d-1) → U_d without incomplete beta inversions",
        |p| Ok(Box::new(catalog::fw_ud_efficient(p.dim)?)),
    );
    reg.register(
        "simplex-power",
        "power map x_j = Π_{k≥j} u_k^{a_k} onto A_d, Jacobian weighted",
        |p| {
            let a = if p.a.is_empty() {
                (1..=p.dim).map(|k| 1.0 / k as f64).collect()
            } else {
                p.a.clone()
            };
            Ok(Box::new(catalog::simplex_power(&a)?))
        },
    );
    reg.register(
        "rosenblatt-fgm",
        "sequential inversion for the FGM density on [0,1]^2",
        |p| {
            if p.dim != 2 {
                return Err(invalid("rosenblatt-fgm", "dim must be 2"));
            }
            Ok(Box::new(RosenblattFgm::new(p.theta)?))
        },
    );
    reg
});

pub fn transform_registry() -> &'static Registry<TransformParams, dyn Transform> {
    &REGISTRY
}

/// Builds a registered transform by name.
pub fn make_transform(kind: &str, params: &TransformParams) -> Result<Box<dyn Transform>> {
    REGISTRY.create(kind, params)
}

//! Numerical probes of Hardy–Krause variation and L^p integrability.
//!
//! Every estimate is a tensor Gauss–Legendre sum over a mesh that either
//! covers the cube uniformly or is graded toward the faces where partials of
//! a transform blow up. Refining the cut-off `ε = 2^-L` level by level and
//! watching the estimates gives a [`DivergenceVerdict`].

mod pyramid;
mod quadrature;
mod rosenblatt;
mod verdict;

use rayon::prelude::*;

pub use pyramid::{
    lipschitz_ratio, pyramid, pyramid_lower_bound, vitali_grid_variation, PyramidFunction,
};
pub use quadrature::{tensor_integrate, QuadratureSpec, Refinement};
pub use rosenblatt::{rosenblatt_condition_check, RosenblattConditions};
pub use verdict::{DivergenceVerdict, Verdict, CONVERGED_RTOL, DIVERGING_GROWTH};

use crate::error::{Error, Result};
use crate::index_set::MultiIndexSet;
use crate::transforms::Transform;

/// `∫ |∂^v τ_j(u_v : 1_{-v})| du_v` along `q`, with the coordinates outside
/// `v` pinned at [`Transform::face_pin`].
pub fn face_l1_integral(
    t: &dyn Transform,
    j: usize,
    v: MultiIndexSet,
    q: &QuadratureSpec,
) -> Result<DivergenceVerdict> {
    face_lp_integral(t, j, v, 1.0, q)
}

/// `∫ |∂^v τ_j(u_v : 1_{-v})|^p du_v`; see [`face_l1_integral`].
pub fn face_lp_integral(
    t: &dyn Transform,
    j: usize,
    v: MultiIndexSet,
    p: f64,
    q: &QuadratureSpec,
) -> Result<DivergenceVerdict> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidArgument(format!("p must be at least 1 (got {p})")));
    }
    if v.is_empty() {
        return Err(Error::InvalidArgument("face integrals need a non-empty v".into()));
    }
    // surfaces oracle and argument errors before any quadrature
    t.partial(j, v, &vec![t.face_pin(); t.input_dim()])
        .map(|_| ())
        .or_else(|e| match e {
            Error::SingularInput(_) => Ok(()),
            e => Err(e),
        })?;
    face_integral_of(t.input_dim(), v, t.face_pin(), q, |u| {
        let a = t.partial(j, v, u)?.abs();
        Ok(if p == 1.0 { a } else { a.powf(p) })
    })
}

/// Level-by-level `∫ g(u_v : pin_{-v}) du_v` for any `g` on `[0,1]^m`.
pub fn face_integral_of<G>(
    m: usize,
    v: MultiIndexSet,
    pin: f64,
    q: &QuadratureSpec,
    mut g: G,
) -> Result<DivergenceVerdict>
where
    G: FnMut(&[f64]) -> Result<f64>,
{
    q.validate()?;
    if v.is_empty() || !v.is_subset(MultiIndexSet::full(m)) {
        return Err(Error::InvalidArgument(format!("v = {v} is not a non-empty subset of 1..={m}")));
    }
    let coords: Vec<usize> = v.iter().collect();
    let mut u = vec![pin; m];
    let mut estimates = Vec::with_capacity(q.depths.len());
    for level in 0..q.depths.len() {
        let rule = q.rule(level);
        let est = tensor_integrate(&rule, coords.len(), |x| {
            for (&c, &xc) in coords.iter().zip(x) {
                u[c] = xc;
            }
            g(&u)
        })?;
        estimates.push(est);
    }
    Ok(DivergenceVerdict::from_estimates(estimates, epsilons(q)))
}

/// What [`hk_upper_bound`] concludes from its face integrals.
#[derive(Debug, Clone, PartialEq)]
pub enum HkBound {
    Finite(f64),
    /// Faces whose integral diverges.
    Diverging(Vec<MultiIndexSet>),
    /// No face diverges but these did not settle.
    Inconclusive(Vec<MultiIndexSet>),
}

/// The face integrals behind an [`HkBound`], in increasing mask order.
#[derive(Debug, Clone)]
pub struct HkReport {
    pub component: usize,
    pub faces: Vec<(MultiIndexSet, DivergenceVerdict)>,
}

impl HkReport {
    pub fn bound(&self) -> HkBound {
        let pick = |want: Verdict| -> Vec<MultiIndexSet> {
            self.faces
                .iter()
                .filter(|(_, r)| r.verdict == want)
                .map(|(v, _)| *v)
                .collect()
        };
        let diverging = pick(Verdict::Diverging);
        if !diverging.is_empty() {
            return HkBound::Diverging(diverging);
        }
        let open = pick(Verdict::Inconclusive);
        if !open.is_empty() {
            return HkBound::Inconclusive(open);
        }
        HkBound::Finite(self.faces.iter().map(|(_, r)| r.last()).sum())
    }
}

/// Sum of the `2^m - 1` face integrals bounding `V_HK(τ_j)`.
pub fn hk_upper_bound(t: &dyn Transform, j: usize, q: &QuadratureSpec) -> Result<HkReport> {
    let all: Vec<MultiIndexSet> = MultiIndexSet::full(t.input_dim()).nonempty_subsets().collect();
    let faces = all
        .par_iter()
        .map(|&v| face_l1_integral(t, j, v, q).map(|r| (v, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HkReport {
        component: j,
        faces,
    })
}

/// `∫ |f|^p` over the mesh of `q` in `m` dimensions, level by level.
///
/// The region is `[ε,1]^m` for meshes graded toward 0, `[ε,1-ε]^m` for
/// meshes graded toward both ends, and the whole cube for uniform meshes.
pub fn lp_divergence_probe<F>(f: F, m: usize, p: f64, q: &QuadratureSpec) -> Result<DivergenceVerdict>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    q.validate()?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidArgument(format!("p must be at least 1 (got {p})")));
    }
    let mut estimates = Vec::with_capacity(q.depths.len());
    for level in 0..q.depths.len() {
        let rule = q.rule(level);
        estimates.push(tensor_integrate(&rule, m, |u| Ok(f(u)?.abs().powf(p)))?);
    }
    Ok(DivergenceVerdict::from_estimates(estimates, epsilons(q)))
}

/// [`lp_divergence_probe`] applied to `∂^v τ_j` over the whole input cube.
pub fn partial_lp_probe(
    t: &dyn Transform,
    j: usize,
    v: MultiIndexSet,
    p: f64,
    q: &QuadratureSpec,
) -> Result<DivergenceVerdict> {
    lp_divergence_probe(|u| t.partial(j, v, u), t.input_dim(), p, q)
}

fn epsilons(q: &QuadratureSpec) -> Vec<f64> {
    (0..q.depths.len()).map(|l| q.epsilon(l)).collect()
}

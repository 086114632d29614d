//! Nested central differences, the reference for analytic mixed partials.

use crate::error::{Error, Result};
use crate::index_set::MultiIndexSet;
use crate::transforms::Transform;

/// First step for `|v| ≤ 2`.
pub const STEP_LOW: f64 = 1e-3;
/// First step for `|v| = 3`.
pub const STEP_MID: f64 = 5e-3;
/// First step for `|v| ≥ 4`, where round-off grows like `ε/h^4`.
pub const STEP_HIGH: f64 = 1.5e-2;

/// `∂^v g(u)` by tensor central differences with Ridders' extrapolation:
/// the step shrinks geometrically and the Richardson table stops once its
/// error estimate no longer improves.
///
/// The first step is [`STEP_LOW`], [`STEP_MID`] or [`STEP_HIGH`] by order, shrunk so that every
/// stencil point stays inside `[0,1]`.
pub fn mixed_partial<F>(g: F, v: MultiIndexSet, u: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    const SHRINK: f64 = 1.4;
    const TABLE: usize = 8;
    if v.iter().any(|i| i >= u.len()) {
        return Err(Error::InvalidArgument(format!("v = {v} exceeds the point dimension")));
    }
    if v.is_empty() {
        return g(u);
    }
    let base = match v.len() {
        0..=2 => STEP_LOW,
        3 => STEP_MID,
        _ => STEP_HIGH,
    };
    let room = v.iter().map(|i| u[i].min(1.0 - u[i])).fold(f64::INFINITY, f64::min);
    let mut h = base.min(0.5 * room);
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument("differences need an interior point".into()));
    }
    let mut prev = vec![central(&g, v, u, h)?];
    let (mut best, mut best_err) = (prev[0], f64::INFINITY);
    for _ in 1..TABLE {
        h /= SHRINK;
        let mut row = vec![central(&g, v, u, h)?];
        let mut fac = SHRINK * SHRINK;
        for k in 1..=prev.len() {
            let next = (row[k - 1] * fac - prev[k - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let err = (next - row[k - 1]).abs().max((next - prev[k - 1]).abs());
            if err <= best_err {
                best_err = err;
                best = next;
            }
            row.push(next);
        }
        let diag = (row[row.len() - 1] - prev[prev.len() - 1]).abs();
        prev = row;
        if prev.len() > 3 && diag >= 2.0 * best_err {
            break;
        }
    }
    Ok(best)
}

fn central<F>(g: &F, v: MultiIndexSet, u: &[f64], h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let coords: Vec<usize> = v.iter().collect();
    let mut x = u.to_vec();
    let mut sum = 0.0;
    for signs in 0u32..(1 << coords.len()) {
        let mut sign = 1.0;
        for (b, &c) in coords.iter().enumerate() {
            if signs >> b & 1 == 1 {
                x[c] = u[c] - h;
                sign = -sign;
            } else {
                x[c] = u[c] + h;
            }
        }
        sum += sign * g(&x)?;
    }
    Ok(sum / (2.0 * h).powi(coords.len() as i32))
}

/// Finite-difference `∂^v τ_j(u)`.
pub fn transform_partial(t: &dyn Transform, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<f64> {
    if j >= t.output_dim() {
        return Err(Error::InvalidArgument(format!("component {} out of range", j + 1)));
    }
    mixed_partial(|p| Ok(t.apply(p)?[j]), v, u)
}

/// The analytic partial when the transform has one, else a finite
/// difference; the flag is `true` for the approximation.
pub fn partial_or_fd(t: &dyn Transform, j: usize, v: MultiIndexSet, u: &[f64]) -> Result<(f64, bool)> {
    match t.partial(j, v, u) {
        Ok(val) => Ok((val, false)),
        Err(Error::OracleUnavailable { .. }) => Ok((transform_partial(t, j, v, u)?, true)),
        Err(e) => Err(e),
    }
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_error(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

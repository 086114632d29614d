//! RQMC experiments on mapped domains.
//!
//! Estimates carry the transformation's weight. Monomials on the simplex
//! have closed-form means, so [`converge`] measures true RMSE against `n`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hash::replicate_seed;
use crate::points::{make_sampler, PointSet, SamplerParams};
use crate::transforms::{DomainKind, Transform, WeightKind};

/// What an [`Integrand`] computes.
#[derive(Debug, Clone, PartialEq)]
pub enum IntegrandKind {
    /// `Π x_j^{q_j}`
    Monomial(Vec<u32>),
    /// `Σ c_t Π x_j^{q_{t,j}}`
    SumOfMonomials(Vec<(f64, Vec<u32>)>),
    /// `c·exp(w·x)`
    SmoothTest { c: f64, w: Vec<f64> },
    Constant(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integrand {
    pub kind: IntegrandKind,
}

impl Integrand {
    pub fn monomial(q: Vec<u32>) -> Self {
        Integrand {
            kind: IntegrandKind::Monomial(q),
        }
    }

    pub fn constant(c: f64) -> Self {
        Integrand {
            kind: IntegrandKind::Constant(c),
        }
    }

    /// `monomial:1,0,2`, `poly:c:e1,..;c:e1,..`, `exp:c:w1,..` or `const:c`.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("integrand {s:?} needs a kind prefix")))?;
        let kind = match head {
            "monomial" => IntegrandKind::Monomial(parse_list(rest)?),
            "poly" => {
                let mut terms = vec![];
                for part in rest.split(';').filter(|p| !p.trim().is_empty()) {
                    let (c, q) = part
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected c:q1,.. in {part:?}")))?;
                    terms.push((parse_num(c)?, parse_list(q)?));
                }
                if terms.is_empty() || terms.iter().any(|(_, q)| q.len() != terms[0].1.len()) {
                    return Err(Error::Parse("poly terms need equal, non-zero lengths".into()));
                }
                IntegrandKind::SumOfMonomials(terms)
            }
            "exp" => {
                let (c, w) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("expected exp:c:w1,..".into()))?;
                IntegrandKind::SmoothTest {
                    c: parse_num(c)?,
                    w: parse_list(w)?,
                }
            }
            "const" => IntegrandKind::Constant(parse_num(rest)?),
            _ => return Err(Error::Parse(format!("unknown integrand kind {head:?}"))),
        };
        Ok(Integrand { kind })
    }

    /// Required input dimension, `None` for constants.
    pub fn dim(&self) -> Option<usize> {
        match &self.kind {
            IntegrandKind::Monomial(q) => Some(q.len()),
            IntegrandKind::SumOfMonomials(t) => Some(t[0].1.len()),
            IntegrandKind::SmoothTest { w, .. } => Some(w.len()),
            IntegrandKind::Constant(_) => None,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mono = |q: &[u32]| q.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product::<f64>();
        match &self.kind {
            IntegrandKind::Monomial(q) => mono(q),
            IntegrandKind::SumOfMonomials(t) => t.iter().map(|(c, q)| c * mono(q)).sum(),
            IntegrandKind::SmoothTest { c, w } => c * w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().exp(),
            IntegrandKind::Constant(c) => *c,
        }
    }

    /// Mean under the uniform law on `domain`, where a closed form exists.
    pub fn exact_on(&self, domain: DomainKind, d: usize) -> Option<f64> {
        let mono = |q: &[u32]| match domain {
            DomainKind::SimplexA => Some(exact_monomial_integral(q)),
            DomainKind::UnitSquare => Some(q.iter().map(|&e| 1.0 / (e as f64 + 1.0)).product()),
            _ => None,
        };
        match &self.kind {
            IntegrandKind::Constant(c) => Some(*c),
            IntegrandKind::Monomial(q) if q.len() == d => mono(q),
            IntegrandKind::SumOfMonomials(t) if t[0].1.len() == d => t
                .iter()
                .map(|(c, q)| mono(q).map(|m| c * m))
                .sum::<Option<f64>>(),
            _ => None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(parse_num).collect()
}

/// `d!·∫_{A_d} Π x_j^{q_j} dx = d!·Π_{k=1}^{d} 1/(k + Q_k)`, `Q_k = Σ_{j≤k} q_j`.
pub fn exact_monomial_integral(q: &[u32]) -> f64 {
    let mut big_q = 0u64;
    let mut out = 1.0;
    for (k, &qk) in q.iter().enumerate() {
        big_q += u64::from(qk);
        out *= (k + 1) as f64 / ((k + 1) as f64 + big_q as f64);
    }
    out
}

/// `E[X^a Y^b]` under the FGM density `1 + θ(1-2x)(1-2y)`.
pub fn fgm_moment(a: u32, b: u32, theta: f64) -> f64 {
    let m = |e: u32| 1.0 / (e as f64 + 1.0) - 2.0 / (e as f64 + 2.0);
    1.0 / ((a as f64 + 1.0) * (b as f64 + 1.0)) + theta * m(a) * m(b)
}

/// `a_j = 3/(2j) + η`, the power map just inside the RQMC-rate boundary.
pub fn boundary_power_exponents(d: usize, eta: f64) -> Vec<f64> {
    (1..=d).map(|j| 1.5 / j as f64 + eta).collect()
}

/// Per-sample weight of `t` at `u`.
pub fn sample_weight(t: &dyn Transform, u: &[f64]) -> Result<f64> {
    match t.weight_kind() {
        WeightKind::UnitVolume => Ok(1.0),
        WeightKind::Jacobian => {
            let vol = t.domain().volume().ok_or_else(|| {
                Error::NotAJacobian(format!("{} has no finite-volume domain", t.name()))
            })?;
            Ok(t.jacobian_weight(u)? / vol)
        }
        WeightKind::Ratio => t
            .importance_ratio(u)
            .ok_or_else(|| Error::NotAJacobian(format!("{} returned no ratio", t.name()))),
    }
}

/// `(1/n) Σ f(τ(u_i)) w(u_i)`.
pub fn estimate(f: &Integrand, t: &dyn Transform, pts: &PointSet) -> Result<f64> {
    if pts.dim() != t.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: t.input_dim(),
            got: pts.dim(),
        });
    }
    if let Some(d) = f.dim() {
        if d != t.output_dim() {
            return Err(Error::DimensionMismatch {
                expected: t.output_dim(),
                got: d,
            });
        }
    }
    if pts.is_empty() {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    let mut x = vec![0.0; t.output_dim()];
    let mut sum = 0.0;
    for u in pts.rows() {
        t.apply_into(u, &mut x)?;
        sum += f.eval(&x) * sample_weight(t, u)?;
    }
    Ok(sum / pts.len() as f64)
}

/// Importance-sampling efficiency `(∫J)²/∫J²` of the power map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssFactor {
    pub factor: f64,
    /// `∫J² = ∞` because some `2·j·a_j ≤ 1`; `factor` is then 0.
    pub divergent: bool,
}

/// `Π_j (2 j a_j - 1) / (j a_j)²`.
pub fn ess_factor(a: &[f64]) -> Result<EssFactor> {
    if a.is_empty() || a.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::InvalidArgument("a_j must be positive".into()));
    }
    let mut factor = 1.0;
    for (i, &aj) in a.iter().enumerate() {
        let ja = (i + 1) as f64 * aj;
        if 2.0 * ja <= 1.0 {
            return Ok(EssFactor {
                factor: 0.0,
                divergent: true,
            });
        }
        factor *= (2.0 * ja - 1.0) / (ja * ja);
    }
    Ok(EssFactor {
        factor,
        divergent: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least squares of `log₂ rmse` on `log₂ n`.
pub fn fit_slope(records: &[(f64, f64)]) -> Result<Fit> {
    if records.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "a fit needs at least 3 records, got {}",
            records.len()
        )));
    }
    if records.iter().any(|&(n, e)| !(n > 0.0 && e > 0.0)) {
        return Err(Error::InvalidArgument("n and rmse must be positive".into()));
    }
    let pts: Vec<(f64, f64)> = records.iter().map(|&(n, e)| (n.log2(), e.log2())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all n are equal".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(Fit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// Settings for [`converge`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeConfig {
    /// Sampler registry name.
    pub sampler: String,
    pub m_min: u32,
    pub m_max: u32,
    pub reps: usize,
    pub seed: u64,
    /// Records (largest `n`) entering the fit.
    pub fit_points: usize,
    pub digit_depth: u32,
}

impl Default for ConvergeConfig {
    fn default() -> Self {
        ConvergeConfig {
            sampler: "owen".into(),
            m_min: 6,
            m_max: 14,
            reps: 32,
            seed: 42,
            fit_points: 6,
            digit_depth: crate::points::DEFAULT_DIGIT_DEPTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub rmse: f64,
    pub reps: usize,
    /// Base seed of the row; replicate `r` uses `replicate_seed(seed, r)`.
    pub seed: u64,
    /// Mean of the replicate estimates.
    pub mean: f64,
    /// Standard error of that mean.
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub records: Vec<ConvergenceRecord>,
    pub fit: Fit,
    pub exact: f64,
    /// `exact` is a high-budget estimate rather than a closed form.
    pub reference_estimated: bool,
    pub config: ConvergeConfig,
    pub transform: String,
}

/// RMSE over `reps` randomizations for `n = 2^m_min ..= 2^m_max`.
///
/// Without `exact` the target is estimated from `8·2^m_max` scrambled-net
/// points and the report is flagged.
pub fn converge(
    f: &Integrand,
    t: &dyn Transform,
    cfg: &ConvergeConfig,
    exact: Option<f64>,
) -> Result<ConvergenceReport> {
    if cfg.m_min > cfg.m_max || cfg.reps == 0 {
        return Err(Error::InvalidArgument("need m_min <= m_max and reps >= 1".into()));
    }
    let sampler = make_sampler(
        &cfg.sampler,
        &SamplerParams {
            digit_depth: cfg.digit_depth,
        },
    )?;
    let m_dim = t.input_dim();
    let exact_known = exact.or_else(|| f.exact_on(t.domain().kind, t.output_dim()));
    let reference_estimated = exact_known.is_none();
    let exact = match exact_known {
        Some(v) => v,
        None => {
            let owen = make_sampler("owen", &SamplerParams::default())?;
            let pts = owen.sample(m_dim, cfg.m_max + 3, replicate_seed(cfg.seed, u64::MAX))?;
            estimate(f, t, &pts)?
        }
    };
    let mut records = vec![];
    for m in cfg.m_min..=cfg.m_max {
        let row_seed = replicate_seed(cfg.seed, u64::from(m));
        let ests = (0..cfg.reps)
            .into_par_iter()
            .map(|r| {
                let pts = sampler.sample(m_dim, m, replicate_seed(row_seed, r as u64))?;
                estimate(f, t, &pts)
            })
            .collect::<Result<Vec<f64>>>()?;
        let reps = ests.len() as f64;
        let mean = ests.iter().sum::<f64>() / reps;
        let mse = ests.iter().map(|e| (e - exact).powi(2)).sum::<f64>() / reps;
        let var = if ests.len() > 1 {
            ests.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (reps - 1.0)
        } else {
            0.0
        };
        records.push(ConvergenceRecord {
            n: 1usize << m,
            rmse: mse.sqrt(),
            reps: cfg.reps,
            seed: row_seed,
            mean,
            stderr: (var / reps).sqrt(),
        });
    }
    let tail = records.len().saturating_sub(cfg.fit_points.max(3));
    let pairs: Vec<(f64, f64)> = records[tail..].iter().map(|r| (r.n as f64, r.rmse)).collect();
    let fit = fit_slope(&pairs)?;
    Ok(ConvergenceReport {
        records,
        fit,
        exact,
        reference_estimated,
        config: cfg.clone(),
        transform: t.name().to_string(),
    })
}

impl ConvergenceReport {
    /// Log-log plot of the records with the fitted line.
    pub fn to_svg(&self) -> String {
        let (w, h, pad) = (480.0, 360.0, 48.0);
        let xs: Vec<f64> = self.records.iter().map(|r| (r.n as f64).log2()).collect();
        let ys: Vec<f64> = self.records.iter().map(|r| r.rmse.max(f64::MIN_POSITIVE).log2()).collect();
        let (x0, x1) = bounds(&xs);
        let (y0, y1) = bounds(&ys);
        let px = |x: f64| pad + (x - x0) / (x1 - x0).max(1e-12) * (w - 2.0 * pad);
        let py = |y: f64| h - pad - (y - y0) / (y1 - y0).max(1e-12) * (h - 2.0 * pad);
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#);
        let _ = writeln!(
            s,
            r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            w - 2.0 * pad,
            h - 2.0 * pad
        );
        for (x, y) in xs.iter().zip(&ys) {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, px(*x), py(*y));
        }
        let line = |x: f64| self.fit.intercept + self.fit.slope * x;
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="red"/>"#,
            px(x0),
            py(line(x0)),
            px(x1),
            py(line(x1))
        );
        let _ = writeln!(
            s,
            r#"<text x="{pad}" y="{}">{} {}: slope {:.3}, log2 n vs log2 rmse</text>"#,
            pad - 12.0,
            self.transform,
            self.config.sampler,
            self.fit.slope
        );
        s.push_str("</svg>\n");
        s
    }
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

//! Fang–Wang maps and the power map onto `A_d`.
//!
//! Each map is stored twice: `apply` transcribes the recursive definition,
//! while the factor lists drive the partial derivatives. Tests check the
//! two agree.

use std::f64::consts::PI;

use super::separable::{Component, Factor, SeparableMap};
use super::special::SinPowerDist;
use super::{invalid, DomainDescriptor, DomainKind};
use crate::error::Result;
use crate::index_set::MAX_COORDS;
use crate::variation::Refinement;

fn check_dim(kind: &str, d: usize, min: usize) -> Result<()> {
    if d < min || d > MAX_COORDS {
        return Err(invalid(kind, format!("dim must lie in {min}..={MAX_COORDS}")));
    }
    Ok(())
}

/// `τ_j = Π_{i≥j} u_i^{1/i}`, uniform on `A_d`.
pub fn fw_ad(d: usize) -> Result<SeparableMap> {
    check_dim("fw-ad", d, 1)?;
    let a: Vec<f64> = (1..=d).map(|k| 1.0 / k as f64).collect();
    let mut map = power_map(&a);
    map.name = "fw-ad";
    Ok(map)
}

/// `τ_j = Π_{k≥j} u_k^{a_k}`, weighted by `J(u) = A Π u_j^{j a_j - 1}`.
pub fn simplex_power(a: &[f64]) -> Result<SeparableMap> {
    check_dim("simplex-power", a.len(), 1)?;
    if let Some(bad) = a.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(invalid(
            "simplex-power",
            format!("a_j must be positive (got {bad})"),
        ));
    }
    let mut map = power_map(a);
    let a = a.to_vec();
    let big_a: f64 = a.iter().product();
    map.weight = Some(Box::new(move |u: &[f64]| {
        big_a
            * a.iter()
                .zip(u)
                .enumerate()
                .map(|(j, (&aj, &uj))| uj.powf((j + 1) as f64 * aj - 1.0))
                .product::<f64>()
    }));
    Ok(map)
}

fn power_map(a: &[f64]) -> SeparableMap {
    let d = a.len();
    let components = (0..d)
        .map(|j| (j..d).map(|k| (k, Factor::Pow(a[k]))).collect())
        .collect();
    let a_apply = a.to_vec();
    SeparableMap {
        name: "simplex-power",
        m: d,
        domain: DomainDescriptor::new(DomainKind::SimplexA, d),
        components,
        refinement: Refinement::GradedToward0,
        apply: Box::new(move |u, x| {
            let mut acc = 1.0;
            for k in (0..a_apply.len()).rev() {
                acc *= u[k].powf(a_apply[k]);
                x[k] = acc;
            }
        }),
        weight: None,
    }
}

/// Ball map; `b_1 = u_1^{1/d}`, `b_i = F_i^{-1}(u_i)` with density ∝ `sin(πx)^{d-i}`.
pub fn fw_bd(d: usize) -> Result<SeparableMap> {
    check_dim("fw-bd", d, 2)?;
    // dists[i] serves b_{i+1} (zero-based variable i), i >= 1
    let dists: Vec<SinPowerDist> = (0..d)
        .map(|i| SinPowerDist::new((d - 1 - i) as u32))
        .collect();
    let radial = (0, Factor::Pow(1.0 / d as f64));
    let mut components: Vec<Component> = Vec::with_capacity(d);
    for j in 1..=d - 2 {
        let mut c = vec![radial];
        c.extend((1..j).map(|i| (i, Factor::SinPiInv(dists[i]))));
        c.push((j, Factor::CosPiInv(dists[j])));
        components.push(c);
    }
    for last in [Factor::Cos2Pi, Factor::Sin2Pi] {
        let mut c = vec![radial];
        c.extend((1..d - 1).map(|i| (i, Factor::SinPiInv(dists[i]))));
        c.push((d - 1, last));
        components.push(c);
    }
    Ok(SeparableMap {
        name: "fw-bd",
        m: d,
        domain: DomainDescriptor::new(DomainKind::Ball, d),
        components,
        refinement: Refinement::GradedTowardBoth,
        apply: Box::new(move |u, x| {
            let b: Vec<f64> = (0..d)
                .map(|i| {
                    if i == 0 {
                        u[0].powf(1.0 / d as f64)
                    } else {
                        dists[i].inv_cdf(u[i])
                    }
                })
                .collect();
            let mut prod = b[0];
            for j in 1..=d - 2 {
                // prod = b_1 Π_{i=2}^{j} sin(π b_i)
                x[j - 1] = prod * (PI * b[j]).cos();
                prod *= (PI * b[j]).sin();
            }
            x[d - 2] = prod * (2.0 * PI * b[d - 1]).cos();
            x[d - 1] = prod * (2.0 * PI * b[d - 1]).sin();
        }),
        weight: None,
    })
}

/// Sphere map from `d-1` inputs; density of `b_i` ∝ `sin(πx)^{d-i-1}`.
pub fn fw_ud(d: usize) -> Result<SeparableMap> {
    check_dim("fw-ud", d, 2)?;
    let m = d - 1;
    let dists: Vec<SinPowerDist> = (0..m)
        .map(|i| SinPowerDist::new((d - 2 - i) as u32))
        .collect();
    let mut components: Vec<Component> = Vec::with_capacity(d);
    for j in 0..d - 2 {
        let mut c: Component = (0..j).map(|i| (i, Factor::SinPiInv(dists[i]))).collect();
        c.push((j, Factor::CosPiInv(dists[j])));
        components.push(c);
    }
    for last in [Factor::Cos2Pi, Factor::Sin2Pi] {
        let mut c: Component = (0..d - 2)
            .map(|i| (i, Factor::SinPiInv(dists[i])))
            .collect();
        c.push((d - 2, last));
        components.push(c);
    }
    Ok(SeparableMap {
        name: "fw-ud",
        m,
        domain: DomainDescriptor::new(DomainKind::Sphere, d),
        components,
        refinement: Refinement::GradedTowardBoth,
        apply: Box::new(move |u, x| {
            let b: Vec<f64> = (0..m).map(|i| dists[i].inv_cdf(u[i])).collect();
            let mut prod = 1.0;
            for j in 0..d - 2 {
                x[j] = prod * (PI * b[j]).cos();
                prod *= (PI * b[j]).sin();
            }
            x[d - 2] = prod * (2.0 * PI * b[m - 1]).cos();
            x[d - 1] = prod * (2.0 * PI * b[m - 1]).sin();
        }),
        weight: None,
    })
}

/// `τ_i = u_1^{1/d} Π_{j=2}^{i} u_j^{1/(d-j+1)} (1 - u_{i+1}^{1/(d-i)})`, `τ_d` without the last factor.
pub fn fw_vd(d: usize) -> Result<SeparableMap> {
    check_dim("fw-vd", d, 1)?;
    let e = |j: usize| 1.0 / (d - j + 1) as f64; // exponent of u_j, one-based j
    let mut components: Vec<Component> = Vec::with_capacity(d);
    for i in 1..d {
        let mut c: Component = (1..=i).map(|j| (j - 1, Factor::Pow(e(j)))).collect();
        c.push((i, Factor::OneMinusPow(1.0 / (d - i) as f64)));
        components.push(c);
    }
    components.push((1..=d).map(|j| (j - 1, Factor::Pow(e(j)))).collect());
    Ok(SeparableMap {
        name: "fw-vd",
        m: d,
        domain: DomainDescriptor::new(DomainKind::SimplexV, d),
        components,
        refinement: Refinement::GradedToward0,
        apply: Box::new(move |u, x| {
            let mut prod = u[0].powf(1.0 / d as f64);
            for i in 1..d {
                x[i - 1] = prod * (1.0 - u[i].powf(1.0 / (d - i) as f64));
                prod *= u[i].powf(1.0 / (d - i) as f64);
            }
            x[d - 1] = prod;
        }),
        weight: None,
    })
}

/// `τ_i = Π_{j<i} u_j^{1/(d-j)} (1 - u_i^{1/(d-i)})`, `τ_d = Π_{j<d} u_j^{1/(d-j)}`.
pub fn fw_td(d: usize) -> Result<SeparableMap> {
    check_dim("fw-td", d, 2)?;
    let e = |j: usize| 1.0 / (d - j) as f64;
    let mut components: Vec<Component> = Vec::with_capacity(d);
    for i in 1..d {
        let mut c: Component = (1..i).map(|j| (j - 1, Factor::Pow(e(j)))).collect();
        c.push((i - 1, Factor::OneMinusPow(e(i))));
        components.push(c);
    }
    components.push((1..d).map(|j| (j - 1, Factor::Pow(e(j)))).collect());
    Ok(SeparableMap {
        name: "fw-td",
        m: d - 1,
        domain: DomainDescriptor::new(DomainKind::SimplexT, d),
        components,
        refinement: Refinement::GradedToward0,
        apply: Box::new(move |u, x| {
            let mut prod = 1.0;
            for i in 1..d {
                let p = u[i - 1].powf(1.0 / (d - i) as f64);
                x[i - 1] = prod * (1.0 - p);
                prod *= p;
            }
            x[d - 1] = prod;
        }),
        weight: None,
    })
}

/// Sphere map built from radial splits `g_j` and uniform angles.
pub fn fw_ud_efficient(d: usize) -> Result<SeparableMap> {
    check_dim("fw-ud-efficient", d, 2)?;
    let m = d / 2;
    let odd = d % 2 == 1;
    // exponent of u_j in g_j / g_{j+1}, one-based j
    let e = move |j: usize| {
        if odd {
            2.0 / (2 * j + 1) as f64
        } else {
            1.0 / j as f64
        }
    };
    // factors of d_l = sqrt(g_l - g_{l-1})
    let d_factors = |l: usize| -> Component {
        let mut c: Component = (l..m).map(|j| (j - 1, Factor::Pow(e(j) / 2.0))).collect();
        if l >= 2 {
            c.push((l - 2, Factor::SqrtOneMinusPow(e(l - 1))));
        }
        c
    };
    let with = |mut c: Component, extra: &[(usize, Factor)]| {
        c.extend_from_slice(extra);
        c
    };
    let mut components: Vec<Component> = Vec::with_capacity(d);
    if odd {
        components.push(with(d_factors(1), &[(m - 1, Factor::OneMinusTwo)]));
        for last in [Factor::Cos2Pi, Factor::Sin2Pi] {
            components.push(with(
                d_factors(1),
                &[(m - 1, Factor::TwoSqrtUOneMinusU), (m, last)],
            ));
        }
        for l in 2..=m {
            for last in [Factor::Cos2Pi, Factor::Sin2Pi] {
                components.push(with(d_factors(l), &[(m + l - 1, last)]));
            }
        }
    } else {
        for l in 1..=m {
            for last in [Factor::Cos2Pi, Factor::Sin2Pi] {
                components.push(with(d_factors(l), &[(m + l - 2, last)]));
            }
        }
    }
    Ok(SeparableMap {
        name: "fw-ud-efficient",
        m: d - 1,
        domain: DomainDescriptor::new(DomainKind::Sphere, d),
        components,
        refinement: Refinement::GradedTowardBoth,
        apply: Box::new(move |u, x| {
            // g[0] = 0, g[m] = 1, g_j = g_{j+1} u_j^{e(j)} for j = m-1 down to 1
            let mut g = vec![0.0; m + 1];
            g[m] = 1.0;
            for j in (1..m).rev() {
                g[j] = g[j + 1] * u[j - 1].powf(e(j));
            }
            let dl = |l: usize| (g[l] - g[l - 1]).max(0.0).sqrt();
            let angle = |i: usize| 2.0 * PI * u[i - 1]; // one-based input index
            if odd {
                let um = u[m - 1];
                x[0] = dl(1) * (1.0 - 2.0 * um);
                let r = dl(1) * 2.0 * (um * (1.0 - um)).sqrt();
                x[1] = r * angle(m + 1).cos();
                x[2] = r * angle(m + 1).sin();
                for l in 2..=m {
                    x[2 * l - 1] = dl(l) * angle(m + l).cos();
                    x[2 * l] = dl(l) * angle(m + l).sin();
                }
            } else {
                for l in 1..=m {
                    x[2 * l - 2] = dl(l) * angle(m + l - 1).cos();
                    x[2 * l - 1] = dl(l) * angle(m + l - 1).sin();
                }
            }
        }),
        weight: None,
    })
}

//! End-to-end acceptance checks, one line per criterion.
//!
//! Run with `cargo test -p qmcmap --test acceptance`; exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmcmap::faadibruno::{
    bell, compose_partial, enumerate_all_terms, term_counts, DerivOracle, ExpLinear, Lambda,
    Polynomial,
};
use qmcmap::fd::{mixed_partial, relative_error};
use qmcmap::harness::{
    boundary_power_exponents, converge, ess_factor, estimate, exact_monomial_integral, fgm_moment,
    sample_weight, ConvergeConfig, Integrand,
};
use qmcmap::points::{make_sampler, mc_points, SamplerParams};
use qmcmap::transforms::{make_transform, Transform, TransformParams};
use qmcmap::variation::{
    face_l1_integral, face_lp_integral, hk_upper_bound, lipschitz_ratio, partial_lp_probe, pyramid,
    pyramid_lower_bound, rosenblatt_condition_check, vitali_grid_variation, DivergenceVerdict,
    QuadratureSpec, Refinement, Verdict,
};
use qmcmap::MultiIndexSet;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn transform(kind: &str, params: TransformParams) -> Box<dyn Transform> {
    make_transform(kind, &params).unwrap_or_else(|e| panic!("{kind}: {e}"))
}

fn dim(kind: &str, d: usize) -> Box<dyn Transform> {
    transform(kind, TransformParams::with_dim(d))
}

// 1 ---------------------------------------------------------------------

fn random_oracle(rng: &mut ChaCha8Rng, d: usize) -> Box<dyn DerivOracle> {
    if rng.random_bool(0.5) {
        let terms = (0..rng.random_range(1..=3))
            .map(|_| {
                let c = rng.random_range(-2.0..2.0);
                let e = (0..d).map(|_| rng.random_range(0..=3)).collect();
                (c, e)
            })
            .collect();
        Box::new(Polynomial::new(d, terms).unwrap())
    } else {
        Box::new(ExpLinear {
            c: rng.random_range(0.5..2.0),
            w: (0..d).map(|_| rng.random_range(-1.0..1.0)).collect(),
        })
    }
}

fn faa_di_bruno_matches_differences() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let d = rng.random_range(1..=4usize);
        let t = match case % 3 {
            0 => dim("fw-ad", d),
            1 => {
                let a = (0..d).map(|_| rng.random_range(0.3..2.0)).collect();
                transform("simplex-power", TransformParams::power(a))
            }
            _ => dim("identity", d),
        };
        let mut v = MultiIndexSet::EMPTY;
        while v.is_empty() {
            v = MultiIndexSet::from_mask(rng.random_range(1..(1u32 << d)));
        }
        let f = random_oracle(&mut rng, d);
        let u: Vec<f64> = (0..d).map(|_| rng.random_range(0.2..0.8)).collect();
        let got = compose_partial(f.as_ref(), t.as_ref(), v, &u).map_err(|e| e.to_string())?;
        let zero = Lambda::zeros(d);
        let reference = mixed_partial(|p| f.eval(&zero, &t.apply(p)?), v, &u).map_err(|e| e.to_string())?;
        // below 1e-3 the differences' own round-off (about 1e-9) dominates
        let err = relative_error(got.value, reference, f64::MIN_POSITIVE);
        worst = worst.max(err);
        ensure(err <= 1e-5, || {
            format!(
                "case {case}: {} v={v} u={u:?}: formula {} vs differences {reference} (rel {err:.2e})",
                t.name(),
                got.value
            )
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("100 cases, worst relative error {worst:.1e}, {secs:.2} s"))
}

// 2 ---------------------------------------------------------------------

/// Counts labelled partitions by trying every map from elements to block
/// ids and keeping those whose ids first appear in increasing order.
fn brute_force_labelled(n: usize, d: u64) -> u64 {
    let total = (n as u64).pow(n as u32);
    let mut count = 0;
    let mut ids = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for slot in ids.iter_mut() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        let mut next = 0;
        let mut canonical = true;
        for &b in &ids {
            if b > next {
                canonical = false;
                break;
            }
            if b == next {
                next += 1;
            }
        }
        if canonical {
            count += d.pow(next as u32);
        }
    }
    count
}

fn combinatorics() -> Outcome {
    let c = term_counts(4, 1).map_err(|e| e.to_string())?;
    ensure(c.per_s == [1, 7, 6, 1] && c.total == 15 && bell(4) == 15, || format!("{c:?}"))?;

    // grouping by block sizes reproduces the univariate fourth-order chain rule
    let terms = enumerate_all_terms(MultiIndexSet::full(4), 1).map_err(|e| e.to_string())?;
    let mut pattern: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for t in &terms {
        let mut sizes: Vec<usize> = t.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        *pattern.entry(sizes).or_default() += 1;
    }
    let want: BTreeMap<Vec<usize>, u64> = [
        (vec![1, 1, 1, 1], 1),
        (vec![1, 1, 2], 6),
        (vec![2, 2], 3),
        (vec![1, 3], 4),
        (vec![4], 1),
    ]
    .into_iter()
    .collect();
    ensure(pattern == want, || format!("h_4 pattern {pattern:?}"))?;

    for n in 1..=8 {
        for d in 1..=3 {
            let v = MultiIndexSet::full(n);
            let terms = enumerate_all_terms(v, d).map_err(|e| e.to_string())?;
            let brute = brute_force_labelled(n, d as u64);
            let counted = term_counts(n, d).map_err(|e| e.to_string())?.total;
            ensure(terms.len() as u64 == brute && counted == brute, || {
                format!("n={n} d={d}: {} terms, {counted} counted, {brute} brute force", terms.len())
            })?;
            if n <= 6 {
                ensure(terms.iter().all(|t| t.is_valid_for(v, d)), || format!("invalid term n={n} d={d}"))?;
            }
        }
    }
    Ok("S(4,s) = (1,7,6,1), h_4 grouping, counts for n <= 8, d <= 3".into())
}

// 3 ---------------------------------------------------------------------

fn pyramid_counterexample() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut estimates = vec![];
    let mut worst_lip = 0.0f64;
    for k in 0..=7u32 {
        let p = pyramid(k);
        let pairs: Vec<([f64; 2], [f64; 2])> = (0..10_000)
            .map(|i| {
                let a = [rng.random::<f64>(), rng.random::<f64>()];
                // every other pair is short, to probe the fine levels
                let r = if i % 2 == 0 { 1.0 } else { 2f64.powi(-(k as i32) - 3) };
                let b = [
                    (a[0] + r * rng.random_range(-1.0..1.0)).clamp(0.0, 1.0),
                    (a[1] + r * rng.random_range(-1.0..1.0)).clamp(0.0, 1.0),
                ];
                (a, b)
            })
            .collect();
        let lip = lipschitz_ratio(|x| p.eval(x[0], x[1]), &pairs);
        worst_lip = worst_lip.max(lip);
        ensure(lip <= 1.0 + 1e-12, || format!("K={k}: Lipschitz ratio {lip}"))?;

        let n = 1usize << (k + 2);
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let est = vitali_grid_variation(|x, y| p.eval(x, y), &grid, &grid);
        let bound = pyramid_lower_bound(k);
        ensure(est >= 0.95 * bound, || format!("K={k}: grid variation {est} < 0.95·{bound}"))?;
        estimates.push(est);
    }
    let ratio = estimates[7] / estimates[6];
    ensure((ratio - 1.5).abs() <= 0.05, || format!("growth ratio {ratio}"))?;
    ensure(estimates.windows(2).all(|w| w[1] > w[0]), || "not increasing".into())?;
    Ok(format!(
        "Lipschitz <= {worst_lip:.6}, V(7) = {:.4} of bound {:.4}, ratio {ratio:.4}",
        estimates[7],
        pyramid_lower_bound(7)
    ))
}

// 4 ---------------------------------------------------------------------

struct VerdictCheck {
    label: String,
    want: Verdict,
    got: DivergenceVerdict,
}

fn graded0(depths: &[u32]) -> QuadratureSpec {
    QuadratureSpec::with_depths(Refinement::GradedToward0, depths.to_vec())
}

fn graded_both(depths: &[u32]) -> QuadratureSpec {
    QuadratureSpec::with_depths(Refinement::GradedTowardBoth, depths.to_vec())
}

/// Face schedule for a transform: long enough that `ε^{1/d}` tails settle.
fn face_spec(t: &dyn Transform) -> QuadratureSpec {
    let depths = [24, 30, 36];
    match t.refinement() {
        Refinement::GradedTowardBoth => graded_both(&depths),
        Refinement::GradedToward0 => graded0(&depths),
        Refinement::Uniform => QuadratureSpec::new(Refinement::Uniform, 5),
    }
}

fn l2_spec(both: bool) -> QuadratureSpec {
    let depths = [6, 12, 18, 24, 30];
    if both {
        graded_both(&depths)
    } else {
        graded0(&depths)
    }
}

fn verdict_table() -> Outcome {
    let start = Instant::now();
    let mut checks: Vec<VerdictCheck> = vec![];
    let err = |e: qmcmap::Error| e.to_string();

    let slog = dim("simplex-log", 3);
    checks.push(VerdictCheck {
        label: "simplex-log d=3 face v={1,2}".into(),
        want: Verdict::Diverging,
        got: face_l1_integral(slog.as_ref(), 0, MultiIndexSet::from_indices([0, 1]), &graded_both(&[4, 8, 12, 16, 20]))
            .map_err(err)?,
    });

    let sphere = dim("sphere-gauss", 3);
    checks.push(VerdictCheck {
        label: "sphere-gauss d=3 full mixed partial".into(),
        want: Verdict::Diverging,
        got: face_l1_integral(sphere.as_ref(), 0, MultiIndexSet::full(3), &QuadratureSpec::new(Refinement::Uniform, 6))
            .map_err(err)?,
    });

    // L1 faces of every component
    for (kind, d) in [("fw-ad", 3), ("fw-bd", 3), ("fw-ud", 3), ("fw-vd", 3), ("fw-td", 3)] {
        let t = dim(kind, d);
        let q = face_spec(t.as_ref());
        for j in 0..t.output_dim() {
            let report = hk_upper_bound(t.as_ref(), j, &q).map_err(err)?;
            for (v, got) in report.faces {
                checks.push(VerdictCheck {
                    label: format!("{kind} d={d} L1 face j={} v={v}", j + 1),
                    want: Verdict::Converged,
                    got,
                });
            }
        }
    }

    // designated L2 probes
    let l2 = |kind: &str, d: usize, j: usize, v: MultiIndexSet, both: bool| -> Result<VerdictCheck, String> {
        let t = dim(kind, d);
        Ok(VerdictCheck {
            label: format!("{kind} d={d} L2 of ∂^{v} τ_{}", j + 1),
            want: Verdict::Diverging,
            got: face_lp_integral(t.as_ref(), j, v, 2.0, &l2_spec(both)).map_err(err)?,
        })
    };
    checks.push(l2("fw-ad", 3, 0, MultiIndexSet::full(3), false)?);
    checks.push(l2("fw-bd", 2, 1, MultiIndexSet::full(2), false)?);
    checks.push(l2("fw-bd", 3, 2, MultiIndexSet::full(3), true)?);
    checks.push(l2("fw-ud", 3, 2, MultiIndexSet::full(2), true)?);
    checks.push(l2("fw-vd", 3, 2, MultiIndexSet::full(3), false)?);
    checks.push(l2("fw-td", 3, 2, MultiIndexSet::full(2), false)?);
    checks.push(l2("fw-ud-efficient", 4, 0, MultiIndexSet::full(2), true)?);
    checks.push(l2("fw-ud-efficient", 5, 1, MultiIndexSet::singleton(1), true)?);

    // the circle: every partial is square integrable
    let circle = dim("fw-ud", 2);
    for j in 0..2 {
        checks.push(VerdictCheck {
            label: format!("fw-ud d=2 L2 of ∂^{{1}} τ_{}", j + 1),
            want: Verdict::Converged,
            got: partial_lp_probe(circle.as_ref(), j, MultiIndexSet::full(1), 2.0, &QuadratureSpec::new(Refinement::Uniform, 6))
                .map_err(err)?,
        });
    }

    let wrong: Vec<String> = checks
        .iter()
        .filter(|c| c.got.verdict != c.want)
        .map(|c| format!("{}: want {}, got {} {:?}", c.label, c.want, c.got.verdict, c.got.estimates))
        .collect();
    ensure(wrong.is_empty(), || wrong.join("; "))?;
    Ok(format!(
        "{} verdicts, 0 misclassified, {:.1} s",
        checks.len(),
        start.elapsed().as_secs_f64()
    ))
}

// 5 ---------------------------------------------------------------------

/// `d! ∫_{0<=x_1<=..<=x_d<=1} Π x^q` by nested Gauss–Legendre, innermost first.
fn nested_simplex_quadrature(q: &[u32]) -> f64 {
    let gl = gauss_nodes();
    fn inner(q: &[u32], k: usize, upper: f64, gl: &[(f64, f64)]) -> f64 {
        if k == 0 {
            return 1.0;
        }
        gl.iter()
            .map(|&(x, w)| {
                let t = 0.5 * upper * (x + 1.0);
                0.5 * upper * w * t.powi(q[k - 1] as i32) * inner(q, k - 1, t, gl)
            })
            .sum()
    }
    let fact: f64 = (1..=q.len()).map(|k| k as f64).product();
    fact * inner(q, q.len(), 1.0, &gl)
}

/// Ten-point Gauss–Legendre nodes on `[-1, 1]` by Newton on `P_10`.
fn gauss_nodes() -> Vec<(f64, f64)> {
    let n = 10;
    (1..=n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn exact_identities() -> Outcome {
    let t = dim("fw-ad", 3);
    let q = graded0(&[24, 30, 36]);
    let mut faces = 0;
    for j in 0..3 {
        for v in MultiIndexSet::full(3).nonempty_subsets() {
            if v.min().unwrap() < j {
                continue;
            }
            let r = face_l1_integral(t.as_ref(), j, v, &q).map_err(|e| e.to_string())?;
            ensure((r.last() - 1.0).abs() <= 1e-3, || format!("face j={} v={v}: {}", j + 1, r.last()))?;
            faces += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for d in 1..=6usize {
        let a = (1..=d).map(|k| 1.0 / k as f64).collect();
        let p = transform("simplex-power", TransformParams::power(a));
        let inv_fact = 1.0 / (1..=d).map(|k| k as f64).product::<f64>();
        for _ in 0..100 {
            let u: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
            let j = p.jacobian_weight(&u).map_err(|e| e.to_string())?;
            ensure(relative_error(j, inv_fact, 0.0) <= 4.0 * f64::EPSILON, || {
                format!("d={d}: J = {j} vs {inv_fact}")
            })?;
        }
    }

    for d in 1..=8 {
        let e = ess_factor(&boundary_power_exponents(d, 0.0)).map_err(|e| e.to_string())?;
        let want = (8.0f64 / 9.0).powi(d as i32);
        ensure((e.factor - want).abs() <= 1e-12, || format!("ess d={d}: {}", e.factor))?;
    }

    let mut checked = 0;
    for d in 1..=4usize {
        for code in 0..4u32.pow(d as u32) {
            let q: Vec<u32> = (0..d).map(|i| code / 4u32.pow(i as u32) % 4).collect();
            let closed = exact_monomial_integral(&q);
            let brute = nested_simplex_quadrature(&q);
            ensure((closed - brute).abs() <= 1e-8, || format!("q={q:?}: {closed} vs {brute}"))?;
            checked += 1;
        }
    }
    Ok(format!("{faces} fw-ad faces = 1, J = 1/d! for d <= 6, ESS (8/9)^d, {checked} monomials"))
}

// 6 ---------------------------------------------------------------------

fn rates() -> Outcome {
    let start = Instant::now();
    let f = Integrand::monomial(vec![1, 0, 2]);
    let fw = dim("fw-ad", 3);
    let power = transform("simplex-power", TransformParams::power(boundary_power_exponents(3, 0.1)));
    // n = 2^6..2^14, R = 32, seed 42, fit over the top 6 points
    let cfg = |sampler: &str| ConvergeConfig {
        sampler: sampler.into(),
        ..ConvergeConfig::default()
    };
    let run = |t: &dyn Transform, s: &str| converge(&f, t, &cfg(s), None).map_err(|e| e.to_string());
    let mc = run(fw.as_ref(), "mc")?.fit.slope;
    let owen_fw = run(fw.as_ref(), "owen")?.fit.slope;
    let owen_power = run(power.as_ref(), "owen")?.fit.slope;
    let secs = start.elapsed().as_secs_f64();
    let summary = format!("mc {mc:.3}, owen+fw-ad {owen_fw:.3}, owen+power {owen_power:.3}, {secs:.1} s");
    ensure((mc + 0.5).abs() <= 0.15, || summary.clone())?;
    ensure((-1.35..=-0.80).contains(&owen_fw), || summary.clone())?;
    ensure(owen_power <= -1.30, || summary.clone())?;
    ensure(secs < 300.0, || summary.clone())?;
    Ok(summary)
}

// 7 ---------------------------------------------------------------------

/// Weighted mean and its standard error of `g(x)` over MC points through `t`.
fn weighted_mean(t: &dyn Transform, n: usize, seed: u64, g: impl Fn(&[f64]) -> f64) -> Result<(f64, f64), String> {
    let pts = mc_points(t.input_dim(), n, seed).map_err(|e| e.to_string())?;
    let (mut s, mut s2) = (0.0, 0.0);
    for u in pts.rows() {
        let x = t.apply(u).map_err(|e| e.to_string())?;
        let y = g(&x) * sample_weight(t, u).map_err(|e| e.to_string())?;
        s += y;
        s2 += y * y;
    }
    let nf = n as f64;
    let mean = s / nf;
    Ok((mean, ((s2 / nf - mean * mean) / (nf - 1.0)).sqrt()))
}

fn uniformity() -> Outcome {
    let n = 100_000;
    let mut worst_z = 0.0f64;
    let mut seed = SEED + 7;
    let mut check = |t: &dyn Transform, j: usize, want: f64, g: &dyn Fn(&[f64]) -> f64| -> Result<(), String> {
        seed += 1;
        let (mean, se) = weighted_mean(t, n, seed, g)?;
        let z = (mean - want).abs() / se.max(1e-300);
        worst_z = worst_z.max(z);
        ensure(z <= 4.0, || format!("{} j={}: mean {mean} vs {want} ({z:.2} SE)", t.name(), j + 1))
    };
    for d in 2..=4usize {
        let simplex = [
            dim("fw-ad", d),
            transform("simplex-power", TransformParams::power(boundary_power_exponents(d, 0.1))),
        ];
        for t in &simplex {
            for j in 0..d {
                check(t.as_ref(), j, (j + 1) as f64 / (d + 1) as f64, &move |x: &[f64]| x[j])?;
            }
        }
    }
    let mut max_norm_err = 0.0f64;
    for d in 3..=5usize {
        for kind in ["fw-ud", "fw-ud-efficient", "sphere-gauss"] {
            let t = dim(kind, d);
            let pts = mc_points(t.input_dim(), 1000, SEED).map_err(|e| e.to_string())?;
            for u in pts.rows() {
                let x = t.apply(u).map_err(|e| e.to_string())?;
                let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                max_norm_err = max_norm_err.max((norm - 1.0).abs());
            }
            for j in 0..d {
                check(t.as_ref(), j, 1.0 / d as f64, &move |x: &[f64]| x[j] * x[j])?;
            }
        }
    }
    ensure(max_norm_err <= 1e-12, || format!("sphere norm error {max_norm_err:.2e}"))?;
    Ok(format!("worst deviation {worst_z:.2} SE, sphere norm error {max_norm_err:.1e}"))
}

// 8 ---------------------------------------------------------------------

fn rosenblatt() -> Outcome {
    let theta = 0.5;
    let c = rosenblatt_condition_check(theta, &QuadratureSpec::new(Refinement::Uniform, 6)).map_err(|e| e.to_string())?;
    ensure(c.i1_joint.verdict == Verdict::Converged && c.i1().is_finite(), || {
        format!("I1 {:?}", c.i1_joint)
    })?;
    ensure(c.i2.last() == 0.0, || format!("I2 = {}", c.i2.last()))?;

    let t = transform("rosenblatt-fgm", TransformParams::fgm(theta));
    let f = Integrand::monomial(vec![1, 1]);
    let exact = fgm_moment(1, 1, theta);
    let owen = make_sampler("owen", &SamplerParams::default()).map_err(|e| e.to_string())?;
    let reps = 32;
    let ests: Vec<f64> = (0..reps)
        .map(|r| {
            let pts = owen.sample(2, 12, SEED + r).map_err(|e| e.to_string())?;
            estimate(&f, t.as_ref(), &pts).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let mean = ests.iter().sum::<f64>() / reps as f64;
    let se = (ests.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (reps as f64 - 1.0) / reps as f64).sqrt();
    ensure((mean - exact).abs() <= 4.0 * se, || format!("E[X1X2] {mean} vs {exact} (SE {se:.1e})"))?;

    let cfg = ConvergeConfig::default();
    let slope = converge(&f, t.as_ref(), &cfg, Some(exact)).map_err(|e| e.to_string())?.fit.slope;
    ensure(slope <= -0.9, || format!("slope {slope}"))?;
    Ok(format!(
        "I1 = {:.4}, I2 = 0, E[X1X2] = {mean:.6} vs {exact:.6} ({:.2} SE), slope {slope:.3}",
        c.i1(),
        (mean - exact).abs() / se
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Faa di Bruno vs finite differences", faa_di_bruno_matches_differences),
        ("partition combinatorics", combinatorics),
        ("pyramid counterexample", pyramid_counterexample),
        ("divergence verdict table", verdict_table),
        ("exact identities", exact_identities),
        ("RMSE rates", rates),
        ("pushforward uniformity", uniformity),
        ("Rosenblatt FGM", rosenblatt),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

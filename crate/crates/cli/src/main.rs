use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};

use qmcmap::faadibruno::{parse_oracle, FaaPlan, Lambda};
use qmcmap::fd::{mixed_partial, partial_or_fd};
use qmcmap::harness::{
    boundary_power_exponents, converge, ess_factor, sample_weight, ConvergeConfig, Integrand,
};
use qmcmap::points::{make_sampler, sampler_registry, PointSet, SamplerParams, DEFAULT_DIGIT_DEPTH};
use qmcmap::transforms::{make_transform, transform_registry, Transform, TransformParams, WeightKind};
use qmcmap::variation::{face_lp_integral, partial_lp_probe, QuadratureSpec, Refinement, Verdict};
use qmcmap::MultiIndexSet;

/// Exit status when a result carries a divergence flag.
const DIVERGENCE_EXIT: u8 = 2;

#[derive(Parser)]
#[command(name = "qmcmap", version, about = "Cube-to-domain transformations for randomized quasi-Monte Carlo")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a (scrambled) digital net as CSV.
    Generate(GenerateArgs),
    /// Map cube points through a transformation.
    Transform(TransformArgs),
    /// Mixed partial of a composition f∘τ by the Faa di Bruno expansion.
    Partials(PartialsArgs),
    /// Face integrals of |∂^v τ_j|^p along a refinement schedule.
    Variation(VariationArgs),
    /// RMSE against n over randomized replicates.
    Converge(ConvergeArgs),
    /// Importance-sampling efficiency of the simplex power map.
    Ess(EssArgs),
    /// Registered samplers and transformations.
    List,
}

/// Selects and parameterizes a registered transformation.
#[derive(Args)]
struct TransformSpec {
    /// Registered name, e.g. fw-ad or simplex-power.
    #[arg(long = "kind", alias = "transform")]
    kind: String,
    /// Output dimension d; defaults to the length of --a, or 2.
    #[arg(long)]
    dim: Option<usize>,
    /// Exponents of simplex-power, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<f64>>,
    /// FGM dependence parameter of rosenblatt-fgm.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta: f64,
}

impl TransformSpec {
    fn build(&self) -> Result<Box<dyn Transform>> {
        let dim = self
            .dim
            .or(self.a.as_ref().map(Vec::len))
            .unwrap_or(2);
        let params = TransformParams {
            dim,
            a: self.a.clone().unwrap_or_default(),
            theta: self.theta,
        };
        Ok(make_transform(&self.kind, &params)?)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    dim: usize,
    /// log_base of the number of points.
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// owen, linear or mc; omit for the unscrambled net.
    #[arg(long)]
    scramble: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_DIGIT_DEPTH)]
    digit_depth: u32,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    spec: TransformSpec,
    /// CSV of cube points with a header row.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartialsArgs {
    #[command(flatten)]
    spec: TransformSpec,
    /// One-based input coordinates, e.g. 1,2,3.
    #[arg(long)]
    v: String,
    /// Outer function, `poly:c:e1,..;..` or `exp:c:w1,..`; without it the
    /// partials of every component of τ are printed.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Evaluation point in the open cube.
    #[arg(long, value_delimiter = ',')]
    at: Vec<f64>,
    /// Also report the residual against nested finite differences.
    #[arg(long)]
    check_fd: bool,
}

#[derive(Args)]
struct VariationArgs {
    #[command(flatten)]
    spec: TransformSpec,
    /// One-based output component j.
    #[arg(long, default_value_t = 1)]
    component: usize,
    /// One-based coordinates of a single face; all faces when omitted.
    #[arg(long)]
    face: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 6)]
    levels: usize,
    /// uniform, graded0 or graded; defaults to the transformation's choice.
    #[arg(long)]
    refinement: Option<String>,
    /// Integrate over the whole cube instead of the face with the rest pinned.
    #[arg(long)]
    full_cube: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    spec: TransformSpec,
    /// `monomial:1,0,2`, `poly:..`, `exp:c:w1,..` or `const:c`.
    #[arg(long)]
    integrand: String,
    #[arg(long, default_value = "owen")]
    sampler: String,
    #[arg(long, default_value_t = 6)]
    nmin: u32,
    #[arg(long, default_value_t = 14)]
    nmax: u32,
    #[arg(long, default_value_t = 32)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest-n records entering the slope fit.
    #[arg(long, default_value_t = 6)]
    fit_points: usize,
    /// Known value of the integral; otherwise a closed form or a large run.
    #[arg(long, allow_hyphen_values = true)]
    exact: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Log-log plot of the records.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct EssArgs {
    /// Exponents a_1,..,a_d; defaults to 3/(2j) + eta.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<f64>>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    eta: f64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Transform(a) => transform(a),
        Command::Partials(a) => partials(a),
        Command::Variation(a) => variation(a),
        Command::Converge(a) => run_converge(a),
        Command::Ess(a) => ess(a),
        Command::List => list(),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn generate(a: GenerateArgs) -> Result<ExitCode> {
    ensure!(a.base == 2, "only base 2 nets are available (got base {})", a.base);
    let name = a.scramble.as_deref().unwrap_or("net");
    let sampler = make_sampler(
        name,
        &SamplerParams {
            digit_depth: a.digit_depth,
        },
    )?;
    let pts = sampler.sample(a.dim, a.m, a.seed)?;
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record((1..=a.dim).map(|i| format!("u{i}")))?;
    for row in pts.rows() {
        w.write_record(row.iter().map(|&x| fmt17(x)))?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn read_points(path: &Path) -> Result<PointSet> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let dim = r.headers()?.len();
    let mut coords = vec![];
    for (i, rec) in r.records().enumerate() {
        for field in rec?.iter() {
            coords.push(
                field
                    .trim()
                    .parse::<f64>()
                    .with_context(|| format!("row {}: bad number {field:?}", i + 1))?,
            );
        }
    }
    Ok(PointSet::from_rows(dim, coords)?)
}

fn transform(a: TransformArgs) -> Result<ExitCode> {
    let t = a.spec.build()?;
    let pts = read_points(&a.input)?;
    ensure!(
        pts.dim() == t.input_dim(),
        "{} takes {} coordinates, the file has {}",
        t.name(),
        t.input_dim(),
        pts.dim()
    );
    let weighted = t.weight_kind() != WeightKind::UnitVolume;
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    let mut header: Vec<String> = (1..=t.output_dim()).map(|i| format!("x{i}")).collect();
    if weighted {
        header.push("weight".into());
    }
    w.write_record(&header)?;
    for u in pts.rows() {
        let mut row: Vec<String> = t.apply(u)?.into_iter().map(fmt17).collect();
        if weighted {
            row.push(fmt17(sample_weight(t.as_ref(), u)?));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    if t.clamp_events() > 0 {
        eprintln!("note: {} inputs were clamped away from the boundary", t.clamp_events());
    }
    Ok(ExitCode::SUCCESS)
}

fn partials(a: PartialsArgs) -> Result<ExitCode> {
    let t = a.spec.build()?;
    let v = MultiIndexSet::parse_one_based(&a.v)?;
    ensure!(
        a.at.len() == t.input_dim(),
        "--at needs {} coordinates, got {}",
        t.input_dim(),
        a.at.len()
    );
    let u = &a.at;
    let mut out = io::stdout().lock();
    let Some(spec) = a.f.as_deref() else {
        for j in 0..t.output_dim() {
            let (val, approx) = partial_or_fd(t.as_ref(), j, v, u)?;
            write!(out, "d^{v} tau_{} = {}", j + 1, fmt17(val))?;
            if approx {
                write!(out, "  (finite differences)")?;
            }
            writeln!(out)?;
        }
        return Ok(ExitCode::SUCCESS);
    };
    let f = parse_oracle(spec)?;
    let plan = FaaPlan::new(v, t.output_dim())?;
    let got = plan.eval(f.as_ref(), t.as_ref(), u)?;
    writeln!(out, "value = {}", fmt17(got.value))?;
    writeln!(out, "terms = {} in {} lambda groups", got.terms, plan.groups().len())?;
    if got.approximate {
        writeln!(out, "note: some inner partials came from finite differences")?;
    }
    if a.check_fd {
        let zero = Lambda::zeros(t.output_dim());
        let fd = mixed_partial(|p| f.eval(&zero, &t.apply(p)?), v, u)?;
        writeln!(out, "finite differences = {}", fmt17(fd))?;
        writeln!(out, "residual = {:.3e}", (got.value - fd).abs())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn variation(a: VariationArgs) -> Result<ExitCode> {
    let t = a.spec.build()?;
    ensure!(
        (1..=t.output_dim()).contains(&a.component),
        "component must lie in 1..={}",
        t.output_dim()
    );
    let j = a.component - 1;
    let refinement = match &a.refinement {
        Some(s) => Refinement::parse(s)?,
        None => t.refinement(),
    };
    let q = QuadratureSpec::new(refinement, a.levels);
    let faces: Vec<MultiIndexSet> = match &a.face {
        Some(s) => vec![MultiIndexSet::parse_one_based(s)?],
        None => MultiIndexSet::full(t.input_dim()).nonempty_subsets().collect(),
    };
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record(["v_mask", "level", "epsilon", "estimate", "verdict"])?;
    let mut diverging = vec![];
    for v in faces {
        let r = if a.full_cube {
            partial_lp_probe(t.as_ref(), j, v, a.p, &q)?
        } else {
            face_lp_integral(t.as_ref(), j, v, a.p, &q)?
        };
        for (level, (eps, est)) in r.epsilons.iter().zip(&r.estimates).enumerate() {
            w.write_record([
                v.mask().to_string(),
                (level + 1).to_string(),
                fmt17(*eps),
                fmt17(*est),
                r.verdict.to_string(),
            ])?;
        }
        eprintln!("v = {v}: {} (last {:.6e})", r.verdict, r.last());
        if r.verdict == Verdict::Diverging {
            diverging.push(v);
        }
    }
    w.flush()?;
    Ok(if diverging.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(DIVERGENCE_EXIT)
    })
}

fn run_converge(a: ConvergeArgs) -> Result<ExitCode> {
    let t = a.spec.build()?;
    let f = Integrand::parse(&a.integrand)?;
    let cfg = ConvergeConfig {
        sampler: a.sampler.clone(),
        m_min: a.nmin,
        m_max: a.nmax,
        reps: a.reps,
        seed: a.seed,
        fit_points: a.fit_points,
        ..ConvergeConfig::default()
    };
    let rep = converge(&f, t.as_ref(), &cfg, a.exact)?;
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record(["n", "rmse", "reps", "seed"])?;
    for r in &rep.records {
        w.write_record([r.n.to_string(), fmt17(r.rmse), r.reps.to_string(), r.seed.to_string()])?;
    }
    w.write_record([
        "fit".to_string(),
        fmt17(rep.fit.slope),
        fmt17(rep.fit.intercept),
        fmt17(rep.fit.r2),
    ])?;
    w.flush()?;
    if let Some(p) = &a.plot {
        std::fs::write(p, rep.to_svg()).with_context(|| format!("writing {}", p.display()))?;
    }
    eprintln!(
        "{} + {}: slope {:.3} (r2 {:.3}), reference {}{}",
        cfg.sampler,
        rep.transform,
        rep.fit.slope,
        rep.fit.r2,
        rep.exact,
        if rep.reference_estimated { " (estimated)" } else { "" }
    );
    // a power map whose weight has infinite variance breaks the error bound
    if let (Some(a), WeightKind::Jacobian) = (&a.spec.a, t.weight_kind()) {
        if ess_factor(a)?.divergent {
            eprintln!("warning: the importance weight has infinite variance (some 2 j a_j <= 1)");
            return Ok(ExitCode::from(DIVERGENCE_EXIT));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn ess(a: EssArgs) -> Result<ExitCode> {
    let exps = match (a.a, a.d) {
        (Some(v), Some(d)) if v.len() != d => bail!("--a has {} entries but --d is {d}", v.len()),
        (Some(v), _) => v,
        (None, Some(d)) => boundary_power_exponents(d, a.eta),
        (None, None) => bail!("give --a or --d"),
    };
    let e = ess_factor(&exps)?;
    println!("{}", e.factor);
    if e.divergent {
        eprintln!("warning: the integral of J^2 diverges (some 2 j a_j <= 1)");
        return Ok(ExitCode::from(DIVERGENCE_EXIT));
    }
    Ok(ExitCode::SUCCESS)
}

fn list() -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    writeln!(out, "samplers:")?;
    for (name, what) in sampler_registry().describe() {
        writeln!(out, "  {name:<18} {what}")?;
    }
    writeln!(out, "transforms:")?;
    for (name, what) in transform_registry().describe() {
        writeln!(out, "  {name:<18} {what}")?;
    }
    Ok(ExitCode::SUCCESS)
}

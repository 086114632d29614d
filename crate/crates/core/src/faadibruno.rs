//! Mixed partials of compositions `h = f ∘ τ` with `f: R^d → R`,
//! `τ: [0,1]^m → R^d`, for derivatives taken at most once per variable.
//!
//! For a non-empty `v ⊆ 1:m`,
//!
//! ```text
//! ∂^v h(u) = Σ_λ f_λ(τ(u)) Σ_s Σ_{(ℓ,k) ∈ K̃L(s,v,λ)} Π_r ∂^{ℓ_r} τ_{k_r}(u)
//! ```
//!
//! where `(ℓ_1 ≺ … ≺ ℓ_s)` is a set partition of `v`, `k_r ∈ 1:d` labels
//! the blocks, and `λ_i` counts the blocks labelled `i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::fd;
use crate::index_set::MultiIndexSet;
use crate::transforms::Transform;

/// Largest `|v|` accepted by the enumerators (`Bell(13) ≈ 2.8e7`).
pub const MAX_CARDINALITY: usize = 12;

/// `λ ∈ N^d`: how many blocks carry each output label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lambda {
    counts: Vec<u32>,
}

impl Lambda {
    pub fn new(counts: Vec<u32>) -> Self {
        Lambda { counts }
    }

    pub fn zeros(d: usize) -> Self {
        Lambda { counts: vec![0; d] }
    }

    pub fn from_labels(d: usize, labels: &[usize]) -> Self {
        let mut counts = vec![0; d];
        for &k in labels {
            counts[k] += 1;
        }
        Lambda { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn d(&self) -> usize {
        self.counts.len()
    }

    /// `|λ|`
    pub fn order(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }
}

/// Graded: total order first, then lexicographic on the counts.
impl Ord for Lambda {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.counts.cmp(&other.counts))
    }
}

impl PartialOrd for Lambda {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One product `Π_r ∂^{ℓ_r} τ_{k_r}` of the expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaaTerm {
    /// Pairwise disjoint, in increasing `≺` order.
    pub blocks: Vec<MultiIndexSet>,
    /// Zero-based component of each block.
    pub labels: Vec<usize>,
    pub lambda: Lambda,
}

impl FaaTerm {
    pub fn s(&self) -> usize {
        self.blocks.len()
    }

    /// Checks every structural invariant against `v` and `d`.
    pub fn is_valid_for(&self, v: MultiIndexSet, d: usize) -> bool {
        let mut union = MultiIndexSet::EMPTY;
        for b in &self.blocks {
            if b.is_empty() || !union.is_disjoint(*b) {
                return false;
            }
            union = union.union(*b);
        }
        union == v
            && self.blocks.len() == self.labels.len()
            && self.blocks.windows(2).all(|w| w[0] < w[1])
            && self.labels.iter().all(|&k| k < d)
            && self.lambda == Lambda::from_labels(d, &self.labels)
    }
}

/// All set partitions of `v`, blocks sorted by `≺`, via restricted growth strings.
pub fn set_partitions(v: MultiIndexSet) -> Vec<Vec<MultiIndexSet>> {
    let elems: Vec<usize> = v.iter().collect();
    let n = elems.len();
    let mut out = vec![];
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    fn walk(
        pos: usize,
        max: usize,
        rgs: &mut Vec<usize>,
        elems: &[usize],
        out: &mut Vec<Vec<MultiIndexSet>>,
    ) {
        if pos == elems.len() {
            let mut blocks = vec![MultiIndexSet::EMPTY; max + 1];
            for (&e, &b) in elems.iter().zip(rgs.iter()) {
                blocks[b] = blocks[b].union(MultiIndexSet::singleton(e));
            }
            blocks.sort();
            out.push(blocks);
            return;
        }
        for b in 0..=max + 1 {
            rgs[pos] = b;
            walk(pos + 1, max.max(b), rgs, elems, out);
        }
    }
    // the first element always opens block 0
    walk(1, 0, &mut rgs, &elems, &mut out);
    out
}

fn check_cardinality(v: MultiIndexSet) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidArgument("v must be non-empty".into()));
    }
    if v.len() > MAX_CARDINALITY {
        return Err(Error::InvalidArgument(format!(
            "|v| = {} exceeds {MAX_CARDINALITY}; the term count grows like the Bell numbers",
            v.len()
        )));
    }
    Ok(())
}

/// Labelled partitions with `s` blocks that realize `λ`, canonically ordered.
pub fn enumerate_kl(s: usize, v: MultiIndexSet, lambda: &Lambda) -> Vec<FaaTerm> {
    if v.is_empty() || v.len() > MAX_CARDINALITY || s == 0 || s > v.len() || lambda.order() != s {
        return vec![];
    }
    let d = lambda.d();
    let mut out = vec![];
    for blocks in set_partitions(v).into_iter().filter(|p| p.len() == s) {
        for_each_labelling(s, d, |labels| {
            if Lambda::from_labels(d, labels) == *lambda {
                out.push(FaaTerm {
                    blocks: blocks.clone(),
                    labels: labels.to_vec(),
                    lambda: lambda.clone(),
                });
            }
        });
    }
    out
}

fn for_each_labelling(s: usize, d: usize, mut f: impl FnMut(&[usize])) {
    let mut labels = vec![0usize; s];
    loop {
        f(&labels);
        let mut pos = s;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < d {
                break;
            }
            labels[pos] = 0;
        }
    }
}

/// Every term for `v` and `d` outputs, grouped by `λ` in increasing order;
/// within a group by `s`, then blocks, then labels.
pub fn enumerate_all_terms(v: MultiIndexSet, d: usize) -> Result<Vec<FaaTerm>> {
    check_cardinality(v)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let mut terms = vec![];
    for blocks in set_partitions(v) {
        for_each_labelling(blocks.len(), d, |labels| {
            terms.push(FaaTerm {
                blocks: blocks.clone(),
                labels: labels.to_vec(),
                lambda: Lambda::from_labels(d, labels),
            });
        });
    }
    terms.sort_by(|a, b| {
        a.lambda
            .cmp(&b.lambda)
            .then(a.s().cmp(&b.s()))
            .then_with(|| a.blocks.cmp(&b.blocks))
            .then_with(|| a.labels.cmp(&b.labels))
    });
    Ok(terms)
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

pub fn bell(n: usize) -> u64 {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCounts {
    /// `S(n, s)·d^s` for `s = 1..=n`.
    pub per_s: Vec<u64>,
    pub total: u64,
}

pub fn term_counts(cardinality: usize, d: usize) -> Result<TermCounts> {
    if cardinality > MAX_CARDINALITY {
        return Err(Error::InvalidArgument(format!(
            "cardinality {cardinality} exceeds {MAX_CARDINALITY}"
        )));
    }
    let per_s: Vec<u64> = (1..=cardinality)
        .map(|s| stirling2(cardinality, s) * (d as u64).pow(s as u32))
        .collect();
    let total = per_s.iter().sum();
    Ok(TermCounts { per_s, total })
}

/// Partial derivatives `f_λ = ∂^λ f` of an outer function `f: R^d → R`.
pub trait DerivOracle: Send + Sync {
    fn dim(&self) -> usize;

    /// Largest `|λ|` the oracle evaluates.
    fn max_order(&self) -> usize {
        usize::MAX
    }

    /// `f_λ(x)`; `λ = 0` gives `f(x)`.
    fn eval(&self, lambda: &Lambda, x: &[f64]) -> Result<f64>;
}

/// `Σ_t c_t Π_i x_i^{e_{t,i}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    d: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    pub fn new(d: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if terms.iter().any(|(_, e)| e.len() != d) {
            return Err(Error::InvalidArgument(format!("every exponent list needs {d} entries")));
        }
        Ok(Polynomial { d, terms })
    }

    /// `"c:e1,..,ed;c:e1,..,ed"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = vec![];
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (c, e) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected c:e1,..,ed in {part:?}")))?;
            let c: f64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            let e = e
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {x:?}"))))
                .collect::<Result<Vec<_>>>()?;
            terms.push((c, e));
        }
        let d = terms.first().map(|(_, e)| e.len()).ok_or_else(|| Error::Parse("empty polynomial".into()))?;
        Polynomial::new(d, terms)
    }
}

fn falling(e: u32, k: u32) -> f64 {
    (0..k).map(|i| (e - i) as f64).product()
}

impl DerivOracle for Polynomial {
    fn dim(&self) -> usize {
        self.d
    }

    fn eval(&self, lambda: &Lambda, x: &[f64]) -> Result<f64> {
        check_point(self.d, lambda, x)?;
        let mut sum = 0.0;
        for (c, e) in &self.terms {
            if e.iter().zip(lambda.counts()).any(|(&ei, &li)| li > ei) {
                continue;
            }
            let mut t = *c;
            for ((&ei, &li), &xi) in e.iter().zip(lambda.counts()).zip(x) {
                t *= falling(ei, li) * xi.powi((ei - li) as i32);
            }
            sum += t;
        }
        Ok(sum)
    }
}

/// `c·exp(w·x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpLinear {
    pub c: f64,
    pub w: Vec<f64>,
}

impl ExpLinear {
    /// `"c:w1,..,wd"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (c, w) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected c:w1,..,wd in {s:?}")))?;
        let c: f64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
        let w = w
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad weight {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpLinear { c, w })
    }
}

impl DerivOracle for ExpLinear {
    fn dim(&self) -> usize {
        self.w.len()
    }

    fn eval(&self, lambda: &Lambda, x: &[f64]) -> Result<f64> {
        check_point(self.w.len(), lambda, x)?;
        let lin: f64 = self.w.iter().zip(x).map(|(w, x)| w * x).sum();
        let scale: f64 = self.w.iter().zip(lambda.counts()).map(|(w, &l)| w.powi(l as i32)).product();
        Ok(self.c * scale * lin.exp())
    }
}

fn check_point(d: usize, lambda: &Lambda, x: &[f64]) -> Result<()> {
    if x.len() != d || lambda.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: if x.len() != d { x.len() } else { lambda.d() },
        });
    }
    Ok(())
}

/// Parses `poly:<terms>` or `exp:<c>:<weights>`.
pub fn parse_oracle(spec: &str) -> Result<Box<dyn DerivOracle>> {
    match spec.split_once(':') {
        Some(("poly", rest)) => Ok(Box::new(Polynomial::parse(rest)?)),
        Some(("exp", rest)) => Ok(Box::new(ExpLinear::parse(rest)?)),
        _ => Err(Error::Parse(format!("expected poly:... or exp:..., got {spec:?}"))),
    }
}

/// The terms for one `v`, grouped by `λ`, reusable across points.
#[derive(Debug, Clone)]
pub struct FaaPlan {
    v: MultiIndexSet,
    d: usize,
    groups: Vec<(Lambda, Vec<FaaTerm>)>,
}

/// A composed partial and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Composed {
    pub value: f64,
    /// Some `∂^ℓ τ_k` came from finite differences.
    pub approximate: bool,
    pub terms: usize,
}

impl FaaPlan {
    pub fn new(v: MultiIndexSet, d: usize) -> Result<Self> {
        let mut groups: BTreeMap<Lambda, Vec<FaaTerm>> = BTreeMap::new();
        for t in enumerate_all_terms(v, d)? {
            groups.entry(t.lambda.clone()).or_default().push(t);
        }
        Ok(FaaPlan {
            v,
            d,
            groups: groups.into_iter().collect(),
        })
    }

    pub fn term_count(&self) -> usize {
        self.groups.iter().map(|(_, g)| g.len()).sum()
    }

    pub fn groups(&self) -> &[(Lambda, Vec<FaaTerm>)] {
        &self.groups
    }

    pub fn eval(&self, f: &dyn DerivOracle, t: &dyn Transform, u: &[f64]) -> Result<Composed> {
        if f.dim() != self.d || t.output_dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: if f.dim() != self.d { f.dim() } else { t.output_dim() },
            });
        }
        if self.v.len() > f.max_order() {
            return Err(Error::OrderExceeded {
                needed: self.v.len(),
                supported: f.max_order(),
            });
        }
        let x = t.apply(u)?;
        let mut cache: HashMap<(u32, usize), f64> = HashMap::new();
        let mut approximate = false;
        let mut value = 0.0;
        for (lambda, terms) in &self.groups {
            let mut inner = 0.0;
            for term in terms {
                let mut prod = 1.0;
                for (b, &k) in term.blocks.iter().zip(&term.labels) {
                    let p = match cache.get(&(b.mask(), k)) {
                        Some(&p) => p,
                        None => {
                            let (p, approx) = fd::partial_or_fd(t, k, *b, u)?;
                            approximate |= approx;
                            cache.insert((b.mask(), k), p);
                            p
                        }
                    };
                    prod *= p;
                    if prod == 0.0 {
                        break;
                    }
                }
                inner += prod;
            }
            if inner != 0.0 {
                value += f.eval(lambda, &x)? * inner;
            }
        }
        Ok(Composed {
            value,
            approximate,
            terms: self.term_count(),
        })
    }
}

/// `∂^v (f ∘ τ)(u)`.
pub fn compose_partial(
    f: &dyn DerivOracle,
    t: &dyn Transform,
    v: MultiIndexSet,
    u: &[f64],
) -> Result<Composed> {
    FaaPlan::new(v, t.output_dim())?.eval(f, t, u)
}

use std::fmt;

/// Relative tolerance between the last two levels for [`Verdict::Converged`].
pub const CONVERGED_RTOL: f64 = 1e-3;
/// Minimum total growth over the last four levels for [`Verdict::Diverging`].
pub const DIVERGING_GROWTH: f64 = 0.25;
const DIVERGING_LEVELS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    Diverging,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Converged => "converged",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Estimates along a refinement schedule and the call made from them.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceVerdict {
    pub estimates: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub verdict: Verdict,
    /// Least-squares slope of the estimates against `log(1/ε)` over the last four levels.
    pub growth_fit: f64,
}

impl DivergenceVerdict {
    pub fn from_estimates(estimates: Vec<f64>, epsilons: Vec<f64>) -> Self {
        assert_eq!(estimates.len(), epsilons.len());
        let n = estimates.len();
        let tail = n.saturating_sub(DIVERGING_LEVELS);
        let growth_fit = slope(
            &epsilons[tail..].iter().map(|e| (1.0 / e).ln()).collect::<Vec<_>>(),
            &estimates[tail..],
        );
        let verdict = if n >= DIVERGING_LEVELS
            && estimates[tail..].windows(2).all(|w| w[1] > w[0])
            && estimates[n - 1] > (1.0 + DIVERGING_GROWTH) * estimates[tail]
            && growth_fit > 0.0
        {
            Verdict::Diverging
        } else if n >= 2
            && (estimates[n - 1] - estimates[n - 2]).abs()
                <= CONVERGED_RTOL * estimates[n - 1].abs() + 1e-300
            || n >= 2 && estimates[n - 1] == 0.0 && estimates[n - 2] == 0.0
        {
            Verdict::Converged
        } else {
            Verdict::Inconclusive
        };
        DivergenceVerdict {
            estimates,
            epsilons,
            verdict,
            growth_fit,
        }
    }

    pub fn last(&self) -> f64 {
        *self.estimates.last().expect("at least one level")
    }
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    if x.len() < 2 {
        return 0.0;
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

//! A Lipschitz function of infinite Vitali variation.
//!
//! Split the square into four quadrants, put a pyramid of height `ℓ/2` on
//! the lower-right one (side `ℓ`) and recurse into the other three. Level
//! `k` holds `3^k` pyramids of side `2^{-k-1}`, each of Vitali variation
//! `2^{-k}`, so level `k` adds `(3/2)^k` and the sum diverges.

/// Lower-right quadrant at every level.
const SELECTED: (usize, usize) = (1, 0);

/// Depth-`K` truncation of the recursive pyramid construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PyramidFunction {
    pub depth: u32,
}

pub fn pyramid(depth: u32) -> PyramidFunction {
    PyramidFunction { depth }
}

impl PyramidFunction {
    /// Value at `(x, y) ∈ [0,1]²`, in `O(K)` steps.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (mut x0, mut y0, mut side) = (0.0, 0.0, 1.0);
        for _ in 0..=self.depth {
            let half = 0.5 * side;
            let qx = usize::from(x >= x0 + half);
            let qy = usize::from(y >= y0 + half);
            let (ax, ay) = (x0 + qx as f64 * half, y0 + qy as f64 * half);
            if (qx, qy) == SELECTED {
                return pyramid_value(x - ax, y - ay, half);
            }
            x0 = ax;
            y0 = ay;
            side = half;
        }
        0.0
    }
}

/// Pyramid of side `l` and height `l/2` on `[0,l]²`, zero outside.
fn pyramid_value(dx: f64, dy: f64, l: f64) -> f64 {
    let c = 0.5 * l;
    (c - (dx - c).abs().max((dy - c).abs())).max(0.0)
}

/// `Σ_{k=0}^{K} (3/2)^k`, the Vitali variation of the depth-`K` truncation.
pub fn pyramid_lower_bound(depth: u32) -> f64 {
    (0..=depth).map(|k| 1.5f64.powi(k as i32)).sum()
}

/// `Σ |f(x₁,y₁) - f(x₀,y₁) - f(x₁,y₀) + f(x₀,y₀)|` over the cells of the
/// grid `xs × ys`; a lower bound for the Vitali variation.
pub fn vitali_grid_variation<F>(f: F, xs: &[f64], ys: &[f64]) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let mut prev: Vec<f64> = xs.iter().map(|&x| f(x, ys[0])).collect();
    let mut total = 0.0;
    for &y in &ys[1..] {
        let row: Vec<f64> = xs.iter().map(|&x| f(x, y)).collect();
        for i in 1..xs.len() {
            total += (row[i] - row[i - 1] - prev[i] + prev[i - 1]).abs();
        }
        prev = row;
    }
    total
}

/// `max |f(x) - f(y)| / ‖x - y‖₂` over `pairs`, skipping coincident pairs.
pub fn lipschitz_ratio<F, P>(f: F, pairs: &[(P, P)]) -> f64
where
    F: Fn(&[f64]) -> f64,
    P: AsRef<[f64]>,
{
    pairs
        .iter()
        .filter_map(|(a, b)| {
            let (a, b) = (a.as_ref(), b.as_ref());
            let dist = a.iter().zip(b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
            (dist > 0.0).then(|| (f(a) - f(b)).abs() / dist)
        })
        .fold(0.0, f64::max)
}

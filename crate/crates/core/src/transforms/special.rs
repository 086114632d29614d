//! Special functions used by the transform catalog.

use std::f64::consts::{PI, SQRT_2};

use statrs::function::beta::{beta, beta_reg};
use statrs::function::erf::erfc_inv;

/// Standard normal quantile.
pub fn norm_inv_cdf(p: f64) -> f64 {
    -SQRT_2 * erfc_inv(2.0 * p)
}

pub fn norm_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// `(2k-1)!!`, with `(-1)!! = 1`.
pub fn odd_double_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (2 * i - 1) as f64).product()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Distribution on `[0,1]` with density proportional to `sin(πx)^k`.
///
/// For `x <= 1/2` the CDF is `I_{sin²(πx)}((k+1)/2, 1/2) / 2`; the upper
/// half follows by symmetry about `1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinPowerDist {
    k: u32,
    /// π / B(1/2, (k+1)/2)
    norm: f64,
}

impl SinPowerDist {
    pub fn new(k: u32) -> Self {
        SinPowerDist {
            k,
            norm: PI / beta(0.5, (k as f64 + 1.0) / 2.0),
        }
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.norm * (PI * x).sin().powi(self.k as i32)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        match self.k {
            0 => x,
            1 => 0.5 * (1.0 - (PI * x).cos()),
            _ if x <= 0.5 => self.lower_half_cdf(x),
            _ => 1.0 - self.lower_half_cdf(1.0 - x),
        }
    }

    fn lower_half_cdf(&self, x: f64) -> f64 {
        let s = (PI * x).sin();
        0.5 * beta_reg((self.k as f64 + 1.0) / 2.0, 0.5, (s * s).min(1.0))
    }

    /// Quantile; Newton iteration safeguarded by bisection on `[0, 1/2]`.
    pub fn inv_cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        match self.k {
            0 => return u,
            1 => return (1.0 - 2.0 * u).acos() / PI,
            _ => {}
        }
        if u > 0.5 {
            return 1.0 - self.lower_half_inv(1.0 - u);
        }
        self.lower_half_inv(u)
    }

    fn lower_half_inv(&self, u: f64) -> f64 {
        let k = self.k as f64;
        let (mut lo, mut hi) = (0.0f64, 0.5f64);
        // small-x expansion: cdf ≈ norm π^k x^(k+1) / (k+1)
        let mut x = ((k + 1.0) * u / (self.norm * PI.powf(k)))
            .powf(1.0 / (k + 1.0))
            .clamp(1e-300, 0.5);
        for _ in 0..200 {
            let f = self.lower_half_cdf(x) - u;
            if f == 0.0 {
                return x;
            }
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let step = f / self.pdf(x);
            let mut next = x - step;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= f64::EPSILON * hi {
                return next;
            }
            x = next;
        }
        x
    }
}

use std::fmt;

/// Default membership tolerance.
pub const DOMAIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    /// `0 <= x_1 <= .. <= x_d <= 1`
    SimplexA,
    /// `x >= 0`, `Σx = 1`
    SimplexT,
    /// `x >= 0`, `Σx <= 1`
    SimplexV,
    /// `‖x‖ <= 1`
    Ball,
    /// `‖x‖ = 1`
    Sphere,
    /// `[0,1]^d`
    UnitSquare,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainDescriptor {
    pub kind: DomainKind,
    pub d: usize,
    pub tol: f64,
}

impl DomainDescriptor {
    pub fn new(kind: DomainKind, d: usize) -> Self {
        DomainDescriptor {
            kind,
            d,
            tol: DOMAIN_TOL,
        }
    }

    /// Lebesgue volume for full-dimensional domains; `None` for `T_d` and `U_d`.
    pub fn volume(&self) -> Option<f64> {
        let d = self.d as f64;
        let fact = statrs::function::factorial::factorial(self.d as u64);
        match self.kind {
            DomainKind::SimplexA | DomainKind::SimplexV => Some(1.0 / fact),
            DomainKind::Ball => Some(
                std::f64::consts::PI.powf(d / 2.0) / statrs::function::gamma::gamma(d / 2.0 + 1.0),
            ),
            DomainKind::UnitSquare => Some(1.0),
            DomainKind::SimplexT | DomainKind::Sphere => None,
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.d || x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let tol = self.tol;
        let nonneg = || x.iter().all(|&v| v >= -tol);
        let sum: f64 = x.iter().sum();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        match self.kind {
            DomainKind::SimplexA => {
                x.first().is_none_or(|&v| v >= -tol)
                    && x.last().is_none_or(|&v| v <= 1.0 + tol)
                    && x.windows(2).all(|w| w[0] <= w[1] + tol)
            }
            DomainKind::SimplexT => nonneg() && (sum - 1.0).abs() <= tol,
            DomainKind::SimplexV => nonneg() && sum <= 1.0 + tol,
            DomainKind::Ball => norm <= 1.0 + tol,
            DomainKind::Sphere => (norm - 1.0).abs() <= tol,
            DomainKind::UnitSquare => x.iter().all(|&v| v >= -tol && v <= 1.0 + tol),
        }
    }
}

impl fmt::Display for DomainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            DomainKind::SimplexA => "A",
            DomainKind::SimplexT => "T",
            DomainKind::SimplexV => "V",
            DomainKind::Ball => "B",
            DomainKind::Sphere => "U",
            DomainKind::UnitSquare => "[0,1]^",
        };
        write!(f, "{name}{}", self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        assert_eq!(DomainDescriptor::new(DomainKind::SimplexA, 3).volume(), Some(1.0 / 6.0));
        let disc = DomainDescriptor::new(DomainKind::Ball, 2).volume().unwrap();
        assert!((disc - std::f64::consts::PI).abs() < 1e-14);
        assert_eq!(DomainDescriptor::new(DomainKind::Sphere, 3).volume(), None);
    }

    #[test]
    fn membership() {
        let a = DomainDescriptor::new(DomainKind::SimplexA, 3);
        assert!(a.contains(&[0.1, 0.2, 0.9]));
        assert!(!a.contains(&[0.3, 0.2, 0.9]));
        assert!(!a.contains(&[0.1, 0.2]));
        let t = DomainDescriptor::new(DomainKind::SimplexT, 3);
        assert!(t.contains(&[0.2, 0.3, 0.5]));
        assert!(!t.contains(&[0.2, 0.3, 0.6]));
        let s = DomainDescriptor::new(DomainKind::Sphere, 2);
        assert!(s.contains(&[0.6, 0.8]));
        assert!(!s.contains(&[0.6, 0.7]));
        let b = DomainDescriptor::new(DomainKind::Ball, 2);
        assert!(b.contains(&[0.6, 0.7]));
        assert!(!b.contains(&[f64::NAN, 0.0]));
        assert_eq!(a.to_string(), "A3");
    }
}

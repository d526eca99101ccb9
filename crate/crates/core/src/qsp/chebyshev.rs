use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use super::bessel::bessel_j_sequence;
use crate::{Error, Result};

/// Largest Jacobi-Anger order considered.
pub const JACOBI_ANGER_ORDER_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(degree: usize) -> Self {
        if degree % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// What an expansion approximates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QspTarget {
    /// `cos(τx)`
    Cos { tau: f64 },
    /// `sin(τx)`
    Sin { tau: f64 },
    Custom,
}

/// `Σ_m c_m T_m(x)` with definite parity; `coefficients[m]` is `c_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevExpansion {
    pub parity: Parity,
    pub coefficients: Vec<f64>,
    /// Uniform bound on `|f - expansion|` over `[-1, 1]`.
    pub truncation_error: f64,
    pub target: QspTarget,
}

impl ChebyshevExpansion {
    /// Builds a custom expansion; coefficients of the wrong parity must vanish.
    pub fn new(parity: Parity, coefficients: Vec<f64>) -> Result<Self> {
        let wrong = coefficients
            .iter()
            .enumerate()
            .any(|(m, c)| Parity::of(m) != parity && *c != 0.0);
        if wrong {
            return Err(Error::invalid("coefficients", "mixed parity"));
        }
        Ok(Self {
            parity,
            coefficients,
            truncation_error: 0.0,
            target: QspTarget::Custom,
        })
    }

    /// Smallest degree with this parity that holds every stored coefficient.
    pub fn degree(&self) -> usize {
        let d = self.coefficients.len().saturating_sub(1);
        match (self.parity, d % 2) {
            (Parity::Odd, 0) => d + 1,
            (Parity::Even, 1) => d + 1,
            _ => d,
        }
    }

    /// Coefficient `c_m`, zero past the stored range.
    pub fn coefficient(&self, m: usize) -> f64 {
        self.coefficients.get(m).copied().unwrap_or(0.0)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coefficients.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        self.coefficient(0) + x * b1 - b2
    }

    /// Evaluates the function the expansion approximates.
    pub fn exact(&self, x: f64) -> f64 {
        match self.target {
            QspTarget::Cos { tau } => (tau * x).cos(),
            QspTarget::Sin { tau } => (tau * x).sin(),
            QspTarget::Custom => self.eval(x),
        }
    }
}

/// Truncated Jacobi-Anger expansions of `cos(τx)` and `sin(τx)`.
///
/// Each is cut at the lowest order whose discarded tail `Σ 2|J_m(τ)|` is at
/// most `eps`, which bounds the uniform error.
pub fn jacobi_anger(tau: f64, eps: f64) -> Result<(ChebyshevExpansion, ChebyshevExpansion)> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::invalid("tau", "must be finite and non-negative"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::invalid("eps", "must lie strictly between 0 and 1"));
    }
    let n = (1.2 * tau + 60.0 + 10.0 * tau.cbrt()).ceil() as usize;
    if n > JACOBI_ANGER_ORDER_CAP {
        return Err(Error::TruncationOrderCap {
            eps,
            cap: JACOBI_ANGER_ORDER_CAP,
        });
    }
    let j = bessel_j_sequence(tau, n + 1);
    let parity_tail = |m: usize| -> f64 {
        // Σ over k ≥ m with k ≡ m (mod 2)
        (m..=n + 1).step_by(2).map(|k| 2.0 * j[k].abs()).sum()
    };
    let mut even_deg = 0;
    while parity_tail(even_deg + 2) > eps {
        even_deg += 2;
        if even_deg + 2 > n {
            return Err(Error::TruncationOrderCap { eps, cap: n });
        }
    }
    let mut odd_deg: Option<usize> = None;
    if parity_tail(1) > eps {
        let mut d = 1;
        while parity_tail(d + 2) > eps {
            d += 2;
            if d + 2 > n {
                return Err(Error::TruncationOrderCap { eps, cap: n });
            }
        }
        odd_deg = Some(d);
    }

    let sign = |m: usize| if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let mut even = vec![0.0; even_deg + 1];
    even[0] = j[0];
    for m in (2..=even_deg).step_by(2) {
        even[m] = 2.0 * sign(m) * j[m];
    }
    let odd = match odd_deg {
        Some(d) => {
            let mut v = vec![0.0; d + 1];
            for m in (1..=d).step_by(2) {
                v[m] = 2.0 * sign(m - 1) * j[m];
            }
            v
        }
        None => Vec::new(),
    };
    Ok((
        ChebyshevExpansion {
            parity: Parity::Even,
            coefficients: even,
            truncation_error: parity_tail(even_deg + 2),
            target: QspTarget::Cos { tau },
        },
        ChebyshevExpansion {
            parity: Parity::Odd,
            truncation_error: parity_tail(odd_deg.map_or(1, |d| d + 2)),
            coefficients: odd,
            target: QspTarget::Sin { tau },
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time() {
        let (c, s) = jacobi_anger(0.0, 1e-12).unwrap();
        assert_eq!(c.coefficients, vec![1.0]);
        assert!(s.coefficients.is_empty());
        assert_eq!(s.degree(), 1);
    }

    #[test]
    fn uniform_error_at_tau_5() {
        let (c, s) = jacobi_anger(5.0, 1e-10).unwrap();
        for i in 0..1000 {
            let x = -1.0 + 2.0 * i as f64 / 999.0;
            assert!((c.eval(x) - (5.0 * x).cos()).abs() <= 1e-10);
            assert!((s.eval(x) - (5.0 * x).sin()).abs() <= 1e-10);
        }
    }

    #[test]
    fn order_at_tau_20() {
        let (c, s) = jacobi_anger(20.0, 1e-12).unwrap();
        for d in [c.degree(), s.degree()] {
            assert!((20..=80).contains(&d), "degree {d}");
        }
    }
}

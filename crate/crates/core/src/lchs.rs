//! Kernels, the θ-grid, complex weights and the classical discretized sum
//! `Σ_j w_j exp(-i C_j t) ψ0` with `C_j = A_H + k_max sin(θ_j) A_L`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use crate::linalg::{evolve_hermitian, hermitian_split, DenseComplexMatrix};
use crate::{Error, Result};

/// Largest supported `n_k`.
pub const MAX_NK: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// `1/(π(1 + ik))`
    Special,
    /// `1/(2π e^{-2^β} exp((1 + ik)^β))`
    Improved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AaRounds {
    Auto,
    Fixed(u32),
}

/// Method parameters shared by the classical and circuit paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LchsConfig {
    pub kernel: Kernel,
    pub beta: f64,
    pub k_max: f64,
    pub n_k: u32,
    pub t: f64,
    pub eps_qsp: f64,
    pub aa_rounds: AaRounds,
}

impl Default for LchsConfig {
    fn default() -> Self {
        Self {
            kernel: Kernel::Improved,
            beta: 0.7,
            k_max: 10.0,
            n_k: 6,
            t: 0.4,
            eps_qsp: 1e-8,
            aa_rounds: AaRounds::Auto,
        }
    }
}

impl LchsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kernel == Kernel::Improved && !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::invalid("beta", "must lie strictly between 0 and 1"));
        }
        if !(self.k_max.is_finite() && self.k_max > 0.0) {
            return Err(Error::invalid("k_max", "must be positive and finite"));
        }
        if !(1..=MAX_NK).contains(&self.n_k) {
            return Err(Error::invalid("n_k", "must lie in 1..=24"));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(Error::invalid("t", "must be finite and non-negative"));
        }
        if !(self.eps_qsp > 0.0 && self.eps_qsp < 1.0) {
            return Err(Error::invalid("eps_qsp", "must lie strictly between 0 and 1"));
        }
        Ok(())
    }

    pub fn n_points(&self) -> usize {
        1usize << self.n_k
    }

    /// Angular step `π/(N_k - 1)`.
    pub fn delta_theta(&self) -> f64 {
        PI / (self.n_points() as f64 - 1.0)
    }

    /// Spacing of the k-grid near `θ = 0`, `k_max Δθ`.
    pub fn delta_k(&self) -> f64 {
        self.k_max * self.delta_theta()
    }

    /// Evaluates the configured kernel.
    pub fn kernel_at(&self, k: f64) -> Result<Complex64> {
        match self.kernel {
            Kernel::Special => Ok(kernel_special(k)),
            Kernel::Improved => kernel_improved(k, self.beta),
        }
    }
}

pub fn kernel_special(k: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) / Complex64::new(PI, PI * k)
}

/// Improved kernel; the complex power uses the principal branch.
pub fn kernel_improved(k: f64, beta: f64) -> Result<Complex64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid("beta", "must lie strictly between 0 and 1"));
    }
    let z = Complex64::new(1.0, k).powf(beta);
    // 1/(2π e^{-2^β} e^{z}) written as one exponential to avoid overflow
    Ok((Complex64::new(2f64.powf(beta), 0.0) - z).exp() / (2.0 * PI))
}

/// Discretized angles `θ_j = -π/2 + jΔθ` and `k_j = k_max sin θ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaGrid {
    pub thetas: Vec<f64>,
    pub ks: Vec<f64>,
    pub delta_theta: f64,
}

/// Builds the grid for `N_k = 2^n_k` points. Endpoints are exactly `±π/2` and
/// the grid is mirror-symmetric bit for bit.
pub fn theta_grid(n_k: u32, k_max: f64) -> Result<ThetaGrid> {
    if !(1..=MAX_NK).contains(&n_k) {
        return Err(Error::invalid("n_k", "must lie in 1..=24"));
    }
    let n = 1usize << n_k;
    let dtheta = PI / (n as f64 - 1.0);
    let mut thetas = vec![0.0; n];
    for j in 0..n / 2 {
        let th = if j == 0 { -FRAC_PI_2 } else { -FRAC_PI_2 + j as f64 * dtheta };
        thetas[j] = th;
        thetas[n - 1 - j] = -th;
    }
    let ks = thetas.iter().map(|th| k_max * th.sin()).collect();
    Ok(ThetaGrid {
        thetas,
        ks,
        delta_theta: dtheta,
    })
}

/// Complex LCHS weights on the θ-grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSet {
    pub weights: Vec<Complex64>,
    pub thetas: Vec<f64>,
    pub ks: Vec<f64>,
    pub delta_theta: f64,
    pub k_max: f64,
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> Complex64 {
        self.weights.iter().sum()
    }

    /// `Σ_j |w_j|`, the LCU normalization of the weight oracles.
    pub fn abs_sum(&self) -> f64 {
        self.weights.iter().map(|w| w.norm()).sum()
    }

    pub fn sin_thetas(&self) -> Vec<f64> {
        self.thetas.iter().map(|t| t.sin()).collect()
    }
}

/// `w_j = k_max cos θ_j Δθ ξ(k_j) / (1 - i k_j)`; endpoint weights are exactly zero.
pub fn compute_weights(cfg: &LchsConfig) -> Result<WeightSet> {
    cfg.validate()?;
    let grid = theta_grid(cfg.n_k, cfg.k_max)?;
    let n = grid.thetas.len();
    let mut weights = Vec::with_capacity(n);
    for (j, (&th, &k)) in grid.thetas.iter().zip(&grid.ks).enumerate() {
        let cos = if j == 0 || j == n - 1 { 0.0 } else { th.cos() };
        let xi = cfg.kernel_at(k)?;
        weights.push(xi * (cfg.k_max * cos * grid.delta_theta) / Complex64::new(1.0, -k));
    }
    Ok(WeightSet {
        weights,
        thetas: grid.thetas,
        ks: grid.ks,
        delta_theta: grid.delta_theta,
        k_max: cfg.k_max,
    })
}

/// The per-node vectors `V_j ψ0 = exp(-i C_j t) ψ0`; weights can be applied
/// afterwards, so kernel and β scans reuse one set of exponentials.
#[derive(Clone, Debug)]
pub struct ClassicalTerms {
    pub sin_thetas: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl ClassicalTerms {
    pub fn compute(a: &DenseComplexMatrix, psi0: &[Complex64], k_max: f64, n_k: u32, t: f64) -> Result<Self> {
        let grid = theta_grid(n_k, k_max)?;
        let split = HermitianSplit::new(a)?;
        let sin_thetas: Vec<f64> = grid.thetas.iter().map(|th| th.sin()).collect();
        let vectors = sin_thetas
            .iter()
            .map(|&s| split.term(k_max, s, t, psi0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { sin_thetas, vectors })
    }

    /// `Σ_j w_j V_j ψ0`, summed in index order.
    pub fn combine(&self, weights: &WeightSet) -> Result<Vec<Complex64>> {
        if weights.len() != self.vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vectors.len(),
                found: weights.len(),
            });
        }
        let dim = self.vectors.first().map_or(0, Vec::len);
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (w, v) in weights.weights.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += w * x;
            }
        }
        Ok(out)
    }
}

/// `A` split into `(A_L, A_H)`, ready to produce individual LCHS terms.
#[derive(Clone, Debug)]
pub struct HermitianSplit {
    pub a_l: DenseComplexMatrix,
    pub a_h: DenseComplexMatrix,
}

impl HermitianSplit {
    pub fn new(a: &DenseComplexMatrix) -> Result<Self> {
        let (a_l, a_h) = hermitian_split(a)?;
        Ok(Self { a_l, a_h })
    }

    /// `C = A_H + k_max sin(θ) A_L`.
    pub fn generator(&self, k_max: f64, sin_theta: f64) -> DenseComplexMatrix {
        &self.a_h + &self.a_l.scale_real(k_max * sin_theta)
    }

    /// `exp(-i C t) ψ0`; exact identity at `t = 0`.
    pub fn term(&self, k_max: f64, sin_theta: f64, t: f64, psi0: &[Complex64]) -> Result<Vec<Complex64>> {
        if psi0.len() != self.a_l.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.a_l.dim(),
                found: psi0.len(),
            });
        }
        if t == 0.0 {
            return Ok(psi0.to_vec());
        }
        evolve_hermitian(&self.generator(k_max, sin_theta), t, psi0)
    }
}

/// Brute-force discretized LCHS: `Σ_j w_j exp(-i C_j t) ψ0`.
pub fn classical_lchs_apply(a: &DenseComplexMatrix, psi0: &[Complex64], cfg: &LchsConfig) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    if psi0.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: psi0.len(),
        });
    }
    let weights = compute_weights(cfg)?;
    ClassicalTerms::compute(a, psi0, cfg.k_max, cfg.n_k, cfg.t)?.combine(&weights)
}

/// Grid-size heuristic `2^n_k ≥ c ε^{-1/2} k_max^{3/2} ‖A_L‖ t` with `c = 1`.
pub fn suggest_nk(cfg: &LchsConfig, norm_al: f64, eps_lchs: f64) -> Result<u32> {
    suggest_nk_with_constant(cfg, norm_al, eps_lchs, 1.0)
}

pub fn suggest_nk_with_constant(cfg: &LchsConfig, norm_al: f64, eps_lchs: f64, c: f64) -> Result<u32> {
    let bound = nk_bound(cfg.k_max, norm_al * cfg.t, eps_lchs, c)?;
    let mut n_k = 1;
    while ((1u64 << n_k) as f64) < bound {
        n_k += 1;
        if n_k > MAX_NK {
            return Err(Error::invalid("n_k", "grid-size bound exceeds the supported maximum"));
        }
    }
    Ok(n_k)
}

/// The raw bound `c ε^{-1/2} k_max^{3/2} ‖A_L‖ t`.
pub fn nk_bound(k_max: f64, norm_al_t: f64, eps_lchs: f64, c: f64) -> Result<f64> {
    if !(eps_lchs > 0.0) {
        return Err(Error::invalid("eps_lchs", "must be positive"));
    }
    if !(norm_al_t >= 0.0 && k_max > 0.0 && c > 0.0) {
        return Err(Error::invalid("k_max", "k_max, c and ‖A_L‖t must be non-negative"));
    }
    Ok(c * eps_lchs.powf(-0.5) * k_max.powf(1.5) * norm_al_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn improved_kernel_at_zero() {
        let xi = kernel_improved(0.0, 0.7).unwrap();
        let want = (2f64.powf(0.7) - 1.0).exp() / (2.0 * PI);
        assert!((xi.re - want).abs() < 1e-15 && xi.im.abs() < 1e-16);
        assert!((xi.re - 0.29716).abs() < 5e-5);
        assert!(kernel_improved(0.0, 1.0).is_err());
    }

    #[test]
    fn special_kernel_values() {
        assert!((kernel_special(0.0).re - 1.0 / PI).abs() < 1e-16);
        let k1 = kernel_special(1.0);
        assert!((k1 - Complex64::new(1.0, -1.0) / (2.0 * PI)).norm() < 1e-16);
    }

    #[test]
    fn grid_endpoints() {
        let g = theta_grid(1, 3.0).unwrap();
        assert_eq!(g.thetas, vec![-FRAC_PI_2, FRAC_PI_2]);
        for n_k in 1..12 {
            let g = theta_grid(n_k, 1.0).unwrap();
            assert_eq!(*g.thetas.last().unwrap(), FRAC_PI_2);
        }
    }

    #[test]
    fn nk_worked_value() {
        let b = nk_bound(40.0, 1.0, 1e-4, 1.0).unwrap();
        assert!((b - 25298.2).abs() < 0.1);
        let cfg = LchsConfig {
            k_max: 40.0,
            t: 1.0,
            ..LchsConfig::default()
        };
        assert_eq!(suggest_nk(&cfg, 1.0, 1e-4).unwrap(), 15);
        let zero_t = LchsConfig { t: 0.0, ..cfg };
        assert_eq!(suggest_nk(&zero_t, 1.0, 1e-4).unwrap(), 1);
    }
}

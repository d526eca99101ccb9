use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use super::DenseComplexMatrix;
use crate::{Error, Result};

/// Periodic advection-diffusion problem `∂u/∂t = -v ∂u/∂x + D ∂²u/∂x²` on `2^n_x`
/// grid points with spacing `1/(2^n_x - 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdeParams {
    pub n_x: u32,
    pub v: f64,
    pub d: f64,
}

impl AdeParams {
    pub fn new(n_x: u32, v: f64, d: f64) -> Result<Self> {
        let p = Self { n_x, v, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=20).contains(&self.n_x) {
            return Err(Error::invalid("n_x", "must lie in 2..=20"));
        }
        if !self.v.is_finite() {
            return Err(Error::invalid("v", "must be finite"));
        }
        if !(self.d.is_finite() && self.d >= 0.0) {
            return Err(Error::invalid("D", "must be finite and non-negative"));
        }
        Ok(())
    }

    pub fn n_points(&self) -> usize {
        1usize << self.n_x
    }

    pub fn dx(&self) -> f64 {
        1.0 / (self.n_points() as f64 - 1.0)
    }

    /// Stencil coefficients `(c_{-1}, c_0, c_{+1})`.
    pub fn stencil(&self) -> (f64, f64, f64) {
        let dx = self.dx();
        let diff = self.d / (dx * dx);
        let adv = self.v / (2.0 * dx);
        (diff + adv, -2.0 * diff, diff - adv)
    }
}

/// The matrix `A` of `dψ/dt = -A ψ`: `A_ii = -c_0`, `A_{i,i-1} = -c_{-1}`,
/// `A_{i,i+1} = -c_{+1}`, indices taken modulo the grid size.
pub fn build_ade_matrix(p: &AdeParams) -> Result<DenseComplexMatrix> {
    p.validate()?;
    let n = p.n_points();
    let (cm, c0, cp) = p.stencil();
    let mut a = DenseComplexMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] += Complex64::new(-c0, 0.0);
        a[(i, (i + n - 1) % n)] += Complex64::new(-cm, 0.0);
        a[(i, (i + 1) % n)] += Complex64::new(-cp, 0.0);
    }
    Ok(a)
}

/// Gaussian `exp(-(x_i - center)² / (2 width²))` on the grid, scaled to unit norm.
pub fn gaussian_initial_state(n_x: u32, center: f64, width: f64) -> Result<Vec<Complex64>> {
    if !(1..=20).contains(&n_x) {
        return Err(Error::invalid("n_x", "must lie in 1..=20"));
    }
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::invalid("width", "must be positive"));
    }
    let n = 1usize << n_x;
    let dx = 1.0 / (n as f64 - 1.0);
    let mut psi: Vec<Complex64> = (0..n)
        .map(|i| {
            let x = i as f64 * dx - center;
            Complex64::new((-x * x / (2.0 * width * width)).exp(), 0.0)
        })
        .collect();
    let norm = super::l2_norm(&psi);
    if norm == 0.0 {
        return Err(Error::invalid("width", "Gaussian underflows on the grid"));
    }
    for z in psi.iter_mut() {
        *z /= norm;
    }
    Ok(psi)
}

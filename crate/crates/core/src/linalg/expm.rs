use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use super::{DenseComplexMatrix, HermitianEigen};
use crate::{Error, Result};

/// Default bound on `‖M‖_1` accepted by [`expm`].
pub const EXPM_NORM_BOUND: f64 = 1.0e4;

const TAYLOR_TERMS: usize = 18;
const TAYLOR_RADIUS: f64 = 0.5;

/// Matrix exponential `exp(M)` with the default norm bound.
pub fn expm(m: &DenseComplexMatrix) -> Result<DenseComplexMatrix> {
    expm_with_bound(m, EXPM_NORM_BOUND)
}

/// Matrix exponential; Hermitian and anti-Hermitian inputs go through an
/// eigen-decomposition, everything else through scaling and squaring of a
/// truncated Taylor series.
pub fn expm_with_bound(m: &DenseComplexMatrix, bound: f64) -> Result<DenseComplexMatrix> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.norm_one();
    if norm > bound {
        return Err(Error::NormTooLarge { norm, bound });
    }
    let n = m.dim();
    if n == 0 || norm == 0.0 {
        return Ok(DenseComplexMatrix::identity(n));
    }
    let tol = 64.0 * f64::EPSILON * norm;
    if m.is_hermitian(tol) {
        let eig = HermitianEigen::new(m)?;
        return Ok(eig.map(|l| Complex64::new(l.exp(), 0.0)));
    }
    if m.is_anti_hermitian(tol) {
        // M = -i H with H = i M Hermitian
        let h = m.scale(Complex64::new(0.0, 1.0));
        let eig = HermitianEigen::new(&h)?;
        return Ok(eig.map(|l| Complex64::from_polar(1.0, -l)));
    }
    Ok(taylor_expm(m, norm))
}

fn taylor_expm(m: &DenseComplexMatrix, norm: f64) -> DenseComplexMatrix {
    let n = m.dim();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > TAYLOR_RADIUS {
        squarings += 1;
    }
    let x = m.scale_real(1.0 / 2f64.powi(squarings as i32));
    let id = DenseComplexMatrix::identity(n);
    // Horner: I + X/1 (I + X/2 (I + ... (I + X/N)))
    let mut acc = id.clone();
    for k in (1..=TAYLOR_TERMS).rev() {
        acc = &id + &(&x * &acc).scale_real(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

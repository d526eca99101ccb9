//! Dense complex linear algebra used by the classical oracles and by the
//! block-encoding checks.

mod ade;
mod eigen;
mod expm;

pub use ade::{build_ade_matrix, gaussian_initial_state, AdeParams};
pub use eigen::{evolve_hermitian, HermitianEigen};
pub use expm::{expm, expm_with_bound, EXPM_NORM_BOUND};

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major data; fails unless `data.len()` is a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = isqrt(data.len());
        if dim * dim != data.len() {
            return Err(Error::NotSquare {
                rows: data.len(),
                cols: 1,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let src = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[r * n..(r + 1) * n];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|c| (0..self.dim).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest singular value, see [`spectral_norm`].
    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(self)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|r| (r..n).all(|c| (self[(r, c)] - self[(c, r)].conj()).norm() <= tol))
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|r| (r..n).all(|c| (self[(r, c)] + self[(c, r)].conj()).norm() <= tol))
    }

    /// Deviation from unitarity, `max |(M† M - I)_{rc}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self
            .adjoint()
            .matmul(self)
            .expect("matrix and its adjoint share a dimension");
        prod.max_abs_diff(&Self::identity(self.dim))
            .expect("same dimension")
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for DenseComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for DenseComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn add(self, rhs: Self) -> DenseComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix add");
        DenseComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn sub(self, rhs: Self) -> DenseComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sub");
        DenseComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn mul(self, rhs: Self) -> DenseComplexMatrix {
        self.matmul(rhs).expect("dimension mismatch in matrix product")
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Splits `A` into Hermitian parts with `A = A_L + i A_H`.
///
/// Returns `(A_L, A_H)` where `A_L = (A + A†)/2` and `A_H = (A - A†)/(2i)`.
pub fn hermitian_split(a: &DenseComplexMatrix) -> Result<(DenseComplexMatrix, DenseComplexMatrix)> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.dim;
    let mut l = DenseComplexMatrix::zeros(n);
    let mut h = DenseComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let x = a[(r, c)];
            let y = a[(c, r)].conj();
            let s = x + y;
            let d = x - y;
            l[(r, c)] = Complex64::new(0.5 * s.re, 0.5 * s.im);
            // d / (2i) = (d.im - i d.re) / 2, exact in floating point
            h[(r, c)] = Complex64::new(0.5 * d.im, -0.5 * d.re);
        }
    }
    Ok((l, h))
}

/// Largest singular value by power iteration on `M† M`.
///
/// The start vector is fixed, so results are reproducible. Iteration stops once
/// the Rayleigh quotient changes by less than `1e-15` relative.
pub fn spectral_norm(m: &DenseComplexMatrix) -> f64 {
    let n = m.dim;
    if n == 0 {
        return 0.0;
    }
    let mh = m.adjoint();
    // deterministic pseudo-random start so no eigenvector is missed by symmetry
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
    normalize(&mut v);
    let mut lambda = 0.0;
    let max_iter = 20_000 + 200 * n;
    for _ in 0..max_iter {
        let w = m.matvec(&v).expect("square");
        let new_lambda = l2_norm(&w).powi(2);
        let mut u = mh.matvec(&w).expect("square");
        if l2_norm(&u) == 0.0 {
            return 0.0;
        }
        normalize(&mut u);
        v = u;
        let done = (new_lambda - lambda).abs() <= 1e-15 * new_lambda;
        lambda = new_lambda;
        if done {
            break;
        }
    }
    lambda.sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = l2_norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

pub fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn linf_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn l2_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn linf_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

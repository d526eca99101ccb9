//! Complex Hermitian eigensolver: Householder reduction to tridiagonal form,
//! a diagonal phase similarity to make it real, then implicit QL.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use super::{DenseComplexMatrix, ONE, ZERO};
use crate::{Error, Result};

const MAX_QL_SWEEPS: usize = 60;

/// Eigen-decomposition `A = V diag(values) V†` of a Hermitian matrix.
///
/// Eigenvalues are sorted ascending; column `k` of `vectors` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DenseComplexMatrix,
}

impl HermitianEigen {
    /// Decomposes `a`, which is assumed Hermitian (only its lower triangle drives
    /// the reduction).
    pub fn new(a: &DenseComplexMatrix) -> Result<Self> {
        let n = a.dim();
        let tri = Tridiagonal::reduce(a)?;
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        let mut d = tri.diag.clone();
        let mut e = tri.offdiag.clone();
        tql(&mut d, &mut e, Rotations::Matrix(&mut z))?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
        let values = order.iter().map(|&i| d[i]).collect();
        let mut vectors = DenseComplexMatrix::zeros(n);
        let mut col = vec![ZERO; n];
        for (k, &j) in order.iter().enumerate() {
            for r in 0..n {
                col[r] = tri.phases[r] * z[r * n + j];
            }
            tri.apply_q(&mut col);
            for r in 0..n {
                vectors[(r, k)] = col[r];
            }
        }
        Ok(Self { values, vectors })
    }

    /// Applies `f(λ)` to the operator: returns `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> Complex64) -> DenseComplexMatrix {
        let n = self.values.len();
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        DenseComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| v[(r, k)] * fv[k] * v[(c, k)].conj()).sum()
        })
    }
}

/// Computes `exp(-i H t) ψ` for Hermitian `H` without forming eigenvectors.
///
/// The Householder reflectors and QL rotations are replayed on `ψ` directly,
/// which costs about the same as one diagonalization.
pub fn evolve_hermitian(h: &DenseComplexMatrix, t: f64, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = h.dim();
    if psi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: psi.len(),
        });
    }
    let tri = Tridiagonal::reduce(h)?;
    let mut d = tri.diag.clone();
    let mut e = tri.offdiag.clone();
    let mut rot = Vec::new();
    tql(&mut d, &mut e, Rotations::Record(&mut rot))?;

    let mut y = psi.to_vec();
    tri.apply_q_adjoint(&mut y);
    for (yk, p) in y.iter_mut().zip(&tri.phases) {
        *yk *= p.conj();
    }
    // Z^T y with Z = G_1 G_2 ... G_m
    for &(i, c, s) in &rot {
        let (a, b) = (y[i], y[i + 1]);
        y[i] = a * c - b * s;
        y[i + 1] = a * s + b * c;
    }
    for (yk, &l) in y.iter_mut().zip(&d) {
        *yk *= Complex64::from_polar(1.0, -l * t);
    }
    for &(i, c, s) in rot.iter().rev() {
        let (a, b) = (y[i], y[i + 1]);
        y[i] = a * c + b * s;
        y[i + 1] = -a * s + b * c;
    }
    for (yk, p) in y.iter_mut().zip(&tri.phases) {
        *yk *= p;
    }
    tri.apply_q(&mut y);
    Ok(y)
}

struct Reflector {
    start: usize,
    v: Vec<Complex64>,
}

struct Tridiagonal {
    reflectors: Vec<Reflector>,
    diag: Vec<f64>,
    /// `offdiag[k]` couples rows `k` and `k + 1`; the last entry is zero.
    offdiag: Vec<f64>,
    phases: Vec<Complex64>,
}

impl Tridiagonal {
    fn reduce(m: &DenseComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = m.dim();
        let mut a = m.as_slice().to_vec();
        let mut reflectors = Vec::new();
        for k in 0..n.saturating_sub(2) {
            let s = k + 1;
            let xnorm = (s..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
            let tail = (s + 1..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>();
            if xnorm == 0.0 || tail == 0.0 {
                continue;
            }
            let x0 = a[s * n + k];
            let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
            let alpha = -phase * xnorm;
            let mut v: Vec<Complex64> = (s..n).map(|i| a[i * n + k]).collect();
            v[0] -= alpha;
            let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in v.iter_mut() {
                *z /= vn;
            }
            // trailing block B <- H B H with H = I - 2 v v†
            let len = n - s;
            let mut u = vec![ZERO; len];
            for (r, ur) in u.iter_mut().enumerate() {
                let row = &a[(s + r) * n + s..(s + r) * n + n];
                *ur = row.iter().zip(&v).map(|(b, vi)| b * vi).sum();
            }
            let cval: f64 = v.iter().zip(&u).map(|(vi, ui)| (vi.conj() * ui).re).sum();
            let z: Vec<Complex64> = u.iter().zip(&v).map(|(ui, vi)| (ui - vi * cval) * 2.0).collect();
            for r in 0..len {
                for c in 0..len {
                    a[(s + r) * n + s + c] -= v[r] * z[c].conj() + z[r] * v[c].conj();
                }
            }
            a[s * n + k] = alpha;
            a[k * n + s] = alpha.conj();
            for i in s + 1..n {
                a[i * n + k] = ZERO;
                a[k * n + i] = ZERO;
            }
            reflectors.push(Reflector { start: s, v });
        }

        let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        let mut offdiag = vec![0.0; n];
        let mut phases = vec![ONE; n];
        for k in 0..n.saturating_sub(1) {
            let e = a[(k + 1) * n + k];
            let r = e.norm();
            offdiag[k] = r;
            phases[k + 1] = if r > 0.0 { phases[k] * (e / r) } else { phases[k] };
        }
        Ok(Self {
            reflectors,
            diag,
            offdiag,
            phases,
        })
    }

    fn apply_reflector(r: &Reflector, y: &mut [Complex64]) {
        let seg = &mut y[r.start..];
        let dot: Complex64 = r.v.iter().zip(seg.iter()).map(|(v, x)| v.conj() * x).sum();
        let f = dot * 2.0;
        for (x, v) in seg.iter_mut().zip(&r.v) {
            *x -= v * f;
        }
    }

    /// `y <- Q† y`, with `Q = H_0 H_1 ... H_{m-1}`.
    fn apply_q_adjoint(&self, y: &mut [Complex64]) {
        for r in &self.reflectors {
            Self::apply_reflector(r, y);
        }
    }

    /// `y <- Q y`.
    fn apply_q(&self, y: &mut [Complex64]) {
        for r in self.reflectors.iter().rev() {
            Self::apply_reflector(r, y);
        }
    }
}

enum Rotations<'a> {
    /// Accumulate into a row-major real `n x n` matrix (columns are eigenvectors).
    Matrix(&'a mut [f64]),
    /// Record `(i, c, s)` for later replay.
    Record(&'a mut Vec<(usize, f64, f64)>),
}

/// Implicit QL on a real symmetric tridiagonal matrix (EISPACK `tql2` layout).
fn tql(d: &mut [f64], e: &mut [f64], mut rot: Rotations<'_>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(Error::invalid("matrix", "QL iteration did not converge"));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    match &mut rot {
                        Rotations::Matrix(z) => {
                            for k in 0..n {
                                let zi = z[k * n + i];
                                let zi1 = z[k * n + i + 1];
                                z[k * n + i + 1] = s * zi + c * zi1;
                                z[k * n + i] = c * zi - s * zi1;
                            }
                        }
                        Rotations::Record(v) => v.push((i, c, s)),
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

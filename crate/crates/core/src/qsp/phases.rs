//! Symmetric QSP phase factors in the `W_x` convention,
//! `U_Φ(x) = e^{iφ_0 Z} Π_k [W(x) e^{iφ_k Z}]` with
//! `W(x) = [[x, i√(1-x²)], [i√(1-x²), x]]`, targeting `Re⟨0|U_Φ|0⟩`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use core::fmt::Write;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use super::chebyshev::{ChebyshevExpansion, Parity, QspTarget};
use crate::{Error, Result};

const FIXED_POINT_ITERS: usize = 400;
const NEWTON_ITERS: usize = 40;
const COEFF_TOL: f64 = 2e-15;
const CHECK_POINTS: usize = 1001;

/// Phases realizing `scale · f` as `Re⟨0|U_Φ|0⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct QspPhaseSequence {
    pub phases: Vec<f64>,
    pub parity: Parity,
    /// Factor applied to the expansion before solving.
    pub scale: f64,
    pub target: QspTarget,
    /// Largest `|Re⟨0|U_Φ|0⟩ - scale · expansion|` on a uniform check grid.
    pub residual: f64,
    pub iterations: usize,
}

impl QspPhaseSequence {
    pub fn degree(&self) -> usize {
        self.phases.len() - 1
    }

    /// `⟨0|U_Φ(x)|0⟩`.
    pub fn response(&self, x: f64) -> Complex64 {
        qsp_response(&self.phases, x)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("qsp-phases v1\n");
        let _ = writeln!(s, "parity {}", if self.parity == Parity::Even { "even" } else { "odd" });
        let _ = writeln!(s, "scale {:.16e}", self.scale);
        let _ = match self.target {
            QspTarget::Cos { tau } => writeln!(s, "target cos {tau:.16e}"),
            QspTarget::Sin { tau } => writeln!(s, "target sin {tau:.16e}"),
            QspTarget::Custom => writeln!(s, "target custom"),
        };
        let _ = writeln!(s, "residual {:.16e}", self.residual);
        let _ = writeln!(s, "iterations {}", self.iterations);
        let _ = writeln!(s, "phases {}", self.phases.len());
        for p in &self.phases {
            let _ = writeln!(s, "{p:.16e}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut next = |key: &str| -> Result<(usize, Vec<String>)> {
            let (n, l) = lines.next().ok_or(Error::Parse {
                line: 0,
                reason: format!("missing `{key}`"),
            })?;
            let parts: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            if !key.is_empty() && parts.first().map(String::as_str) != Some(key) {
                return Err(Error::Parse {
                    line: n + 1,
                    reason: format!("expected `{key}`"),
                });
            }
            Ok((n + 1, parts))
        };
        let bad = |line: usize, what: &str| Error::Parse {
            line,
            reason: what.to_string(),
        };
        let num = |line: usize, s: Option<&String>| -> Result<f64> {
            s.and_then(|v| v.parse().ok()).ok_or_else(|| bad(line, "bad number"))
        };
        let (n, head) = next("qsp-phases")?;
        if head.get(1).map(String::as_str) != Some("v1") {
            return Err(bad(n, "unsupported version"));
        }
        let (n, p) = next("parity")?;
        let parity = match p.get(1).map(String::as_str) {
            Some("even") => Parity::Even,
            Some("odd") => Parity::Odd,
            _ => return Err(bad(n, "bad parity")),
        };
        let (n, p) = next("scale")?;
        let scale = num(n, p.get(1))?;
        let (n, p) = next("target")?;
        let target = match p.get(1).map(String::as_str) {
            Some("cos") => QspTarget::Cos { tau: num(n, p.get(2))? },
            Some("sin") => QspTarget::Sin { tau: num(n, p.get(2))? },
            Some("custom") => QspTarget::Custom,
            _ => return Err(bad(n, "bad target")),
        };
        let (n, p) = next("residual")?;
        let residual = num(n, p.get(1))?;
        let (n, p) = next("iterations")?;
        let iterations = num(n, p.get(1))? as usize;
        let (n, p) = next("phases")?;
        let count = num(n, p.get(1))? as usize;
        let mut phases = Vec::with_capacity(count);
        for _ in 0..count {
            let (n, p) = next("")?;
            phases.push(num(n, p.first())?);
        }
        if phases.is_empty() || Parity::of(phases.len() - 1) != parity {
            return Err(bad(n, "phase count does not match parity"));
        }
        Ok(Self {
            phases,
            parity,
            scale,
            target,
            residual,
            iterations,
        })
    }
}

/// `⟨0|U_Φ(x)|0⟩` for `x ∈ [-1, 1]`.
pub fn qsp_response(phases: &[f64], x: f64) -> Complex64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let is = Complex64::new(0.0, s);
    let mut a = Complex64::from_polar(1.0, phases[0]);
    let mut b = Complex64::new(0.0, 0.0);
    for &p in &phases[1..] {
        let na = a * x + b * is;
        let nb = a * is + b * x;
        a = na * Complex64::from_polar(1.0, p);
        b = nb * Complex64::from_polar(1.0, -p);
    }
    a
}

/// Solves for phases of `e`, using exact phases for a pure `±T_d` target and a
/// `1/2` rescaling otherwise.
pub fn solve_phases(e: &ChebyshevExpansion, eps: f64) -> Result<QspPhaseSequence> {
    if let Some(seq) = pure_chebyshev(e) {
        return Ok(seq);
    }
    solve_phases_scaled(e, eps, 0.5)
}

fn pure_chebyshev(e: &ChebyshevExpansion) -> Option<QspPhaseSequence> {
    let d = e.degree();
    let lead = e.coefficient(d);
    let others_zero = (0..d).all(|m| e.coefficient(m) == 0.0);
    if !others_zero || (lead.abs() - 1.0).abs() > 0.0 {
        return None;
    }
    let mut phases = vec![0.0; d + 1];
    if lead < 0.0 {
        if d == 0 {
            phases[0] = PI;
        } else {
            phases[0] = FRAC_PI_2;
            phases[d] = FRAC_PI_2;
        }
    }
    Some(QspPhaseSequence {
        phases,
        parity: e.parity,
        scale: 1.0,
        target: e.target,
        residual: 0.0,
        iterations: 0,
    })
}

/// Solves for phases with `Re⟨0|U_Φ(x)|0⟩ ≈ scale · e(x)`.
///
/// Symmetric phases `Φ = (π/4, 0, ..., 0, π/4) + Ψ` are found by the
/// fixed-point map `Ψ ← Ψ - (F(Ψ) - c)/λ` on Chebyshev coefficients, with a
/// Newton fallback when it stalls. Fails if the realized residual exceeds `eps`.
pub fn solve_phases_scaled(e: &ChebyshevExpansion, eps: f64, scale: f64) -> Result<QspPhaseSequence> {
    if !(scale > 0.0 && scale <= 1.0) {
        return Err(Error::invalid("scale", "must lie in (0, 1]"));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid("eps", "must be positive"));
    }
    let d = e.degree();
    let (phases, iterations) = if d == 0 {
        let c0 = scale * e.coefficient(0);
        if c0.abs() > 1.0 {
            return Err(Error::invalid("expansion", "constant target exceeds 1 in modulus"));
        }
        (vec![c0.acos()], 0)
    } else {
        let solver = FixedPoint::new(e, scale);
        solver.solve()?
    };
    let residual = check_residual(&phases, e, scale);
    if !(residual <= eps) {
        return Err(Error::PhaseSolver { residual, iterations });
    }
    Ok(QspPhaseSequence {
        phases,
        parity: e.parity,
        scale,
        target: e.target,
        residual,
        iterations,
    })
}

fn check_residual(phases: &[f64], e: &ChebyshevExpansion, scale: f64) -> f64 {
    (0..CHECK_POINTS)
        .map(|i| {
            let x = -1.0 + 2.0 * i as f64 / (CHECK_POINTS - 1) as f64;
            (qsp_response(phases, x).re - scale * e.eval(x)).abs()
        })
        .fold(0.0, f64::max)
}

struct FixedPoint {
    d: usize,
    target: Vec<f64>,
    lambda: Vec<f64>,
    nodes: Vec<f64>,
    /// `cheb[i][k] = T_{d-2i}(x_k)`
    cheb: Vec<Vec<f64>>,
}

impl FixedPoint {
    fn new(e: &ChebyshevExpansion, scale: f64) -> Self {
        let d = e.degree();
        let n_red = d / 2 + 1;
        let m = d + 1;
        let thetas: Vec<f64> = (0..m).map(|k| PI * (2 * k + 1) as f64 / (2 * m) as f64).collect();
        let nodes = thetas.iter().map(|t| t.cos()).collect();
        let cheb = (0..n_red)
            .map(|i| {
                let n = (d - 2 * i) as f64;
                thetas.iter().map(|t| (n * t).cos()).collect()
            })
            .collect();
        Self {
            d,
            target: (0..n_red).map(|i| scale * e.coefficient(d - 2 * i)).collect(),
            lambda: (0..n_red).map(|i| if d - 2 * i > 0 { -2.0 } else { -1.0 }).collect(),
            nodes,
            cheb,
        }
    }

    fn phases(&self, psi: &[f64]) -> Vec<f64> {
        let d = self.d;
        let mut ph = vec![0.0; d + 1];
        for (k, &p) in psi.iter().enumerate() {
            ph[k] += p;
            if d - k != k {
                ph[d - k] += p;
            }
        }
        ph[0] += FRAC_PI_4;
        ph[d] += FRAC_PI_4;
        ph
    }

    /// Chebyshev coefficients `c_{d-2i}` of `Re⟨0|U_Φ|0⟩`, minus the target.
    fn residual(&self, psi: &[f64]) -> Vec<f64> {
        let ph = self.phases(psi);
        let g: Vec<f64> = self.nodes.iter().map(|&x| qsp_response(&ph, x).re).collect();
        let m = self.nodes.len() as f64;
        self.cheb
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut c = 2.0 / m * row.iter().zip(&g).map(|(t, v)| t * v).sum::<f64>();
                if self.d - 2 * i == 0 {
                    c *= 0.5;
                }
                c - self.target[i]
            })
            .collect()
    }

    fn solve(&self) -> Result<(Vec<f64>, usize)> {
        let mut psi: Vec<f64> = self.target.iter().zip(&self.lambda).map(|(c, l)| c / l).collect();
        let mut best = (f64::INFINITY, psi.clone());
        let mut iters = 0;
        for _ in 0..FIXED_POINT_ITERS {
            iters += 1;
            let r = self.residual(&psi);
            let err = max_abs(&r);
            if err < best.0 {
                best = (err, psi.clone());
            }
            if err <= COEFF_TOL {
                return Ok((self.phases(&psi), iters));
            }
            if !err.is_finite() || err > 1e3 * best.0 {
                break;
            }
            for ((p, ri), l) in psi.iter_mut().zip(&r).zip(&self.lambda) {
                *p -= ri / l;
            }
        }
        let (psi, n) = self.newton(best.1)?;
        Ok((self.phases(&psi), iters + n))
    }

    fn newton(&self, mut psi: Vec<f64>) -> Result<(Vec<f64>, usize)> {
        let n = psi.len();
        let h = 1e-7;
        let mut r = self.residual(&psi);
        for it in 0..NEWTON_ITERS {
            if max_abs(&r) <= COEFF_TOL {
                return Ok((psi, it));
            }
            let mut jac = vec![vec![0.0; n]; n];
            for b in 0..n {
                let mut p = psi.clone();
                p[b] += h;
                let rp = self.residual(&p);
                p[b] -= 2.0 * h;
                let rm = self.residual(&p);
                for a in 0..n {
                    jac[a][b] = (rp[a] - rm[a]) / (2.0 * h);
                }
            }
            let step = solve_linear(jac, r.iter().map(|v| -v).collect()).ok_or(Error::PhaseSolver {
                residual: max_abs(&r),
                iterations: it,
            })?;
            for (p, s) in psi.iter_mut().zip(&step) {
                *p += s;
            }
            r = self.residual(&psi);
        }
        // accept a slightly larger coefficient error; the caller checks the realized residual
        Ok((psi, NEWTON_ITERS))
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

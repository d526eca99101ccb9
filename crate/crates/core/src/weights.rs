//! Preparation of `Σ_j √w_j |j⟩` on `r_k` with a flag qubit `a_be_w`, and
//! amplitude amplification of the flagged branch.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use crate::block_encoding::reg::R_K;
use crate::lchs::WeightSet;
use crate::linalg::l2_norm;
use crate::sim::{Circuit, CircuitBuilder, Control, RegisterLayout, StmcGate};
use crate::{Error, Result};

pub const A_BE_W: &str = "a_be_w";

/// A weight oracle and its bookkeeping.
#[derive(Clone, Debug)]
pub struct PreparedWeights {
    pub circuit: Circuit,
    /// Amplitude of the `a_be_w = 0` branch produced from `|0⟩`.
    pub success_amplitude: f64,
    /// The same amplitude before amplification, `√p0`.
    pub raw_amplitude: f64,
    pub n_aa: u32,
    /// `Σ_j |w_j|`; the oracle encodes `w_j / weight_scale`.
    pub weight_scale: f64,
}

impl PreparedWeights {
    pub fn p0(&self) -> f64 {
        self.raw_amplitude * self.raw_amplitude
    }

    pub fn success_probability(&self) -> f64 {
        self.success_amplitude * self.success_amplitude
    }
}

/// Rotation angles `(φ_y, φ_z)` with `Rz(φ_z)` then `Ry(φ_y)` taking `|0⟩` to
/// `√w|0⟩ + ...` for `|w| ≤ 1`, principal square root.
fn angles(w: Complex64) -> (f64, f64) {
    let r = w.sqrt();
    (2.0 * r.norm().min(1.0).acos(), -2.0 * r.arg())
}

/// `U_√w`: an H-ladder on `r_k`, then for each `j` a rotation of `a_be_w`
/// controlled on `r_k = j`, so that the `a_be_w = 0` branch holds
/// `Σ_j √(w_j/Σ|w|) |j⟩ / √N_k`.
pub fn build_u_sqrt_w(w: &WeightSet) -> Result<PreparedWeights> {
    ladder(w, false)
}

/// Like [`build_u_sqrt_w`] with adjoint rotations, so the flagged branch holds
/// `conj(√w_j)`. Its adjoint supplies the right-hand factor of the LCU.
pub fn build_u_sqrt_w_conjugate(w: &WeightSet) -> Result<PreparedWeights> {
    ladder(w, true)
}

fn ladder(w: &WeightSet, conjugate: bool) -> Result<PreparedWeights> {
    let n = w.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::invalid("weights", "need 2^n_k weights with n_k ≥ 1"));
    }
    let n_k = n.trailing_zeros() as usize;
    let scale = w.abs_sum();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid("weights", "all weights vanish"));
    }
    let layout = Arc::new(RegisterLayout::new(&[(R_K, n_k), (A_BE_W, 1)])?);
    let r_k = layout.qubit_list(R_K)?;
    let flag = layout.qubit(A_BE_W, 0)?;
    let mut cb = CircuitBuilder::new(layout, if conjugate { "U_sqrt_w_conj" } else { "U_sqrt_w" });
    for &q in &r_k {
        cb.push(StmcGate::h(q));
    }
    for (j, wj) in w.weights.iter().enumerate() {
        let ctl: Vec<Control> = r_k
            .iter()
            .enumerate()
            .map(|(b, &q)| Control { qubit: q, on_one: (j >> b) & 1 == 1 })
            .collect();
        let (py, pz) = angles(wj / scale);
        if conjugate {
            cb.push(StmcGate::ry(-py, flag).with_controls(ctl.clone()));
            cb.push(StmcGate::rz(-pz, flag).with_controls(ctl));
        } else {
            cb.push(StmcGate::rz(pz, flag).with_controls(ctl.clone()));
            cb.push(StmcGate::ry(py, flag).with_controls(ctl));
        }
    }
    let raw = (1.0 / n as f64).sqrt();
    Ok(PreparedWeights {
        circuit: cb.build()?,
        success_amplitude: raw,
        raw_amplitude: raw,
        n_aa: 0,
        weight_scale: scale,
    })
}

/// Grover round count maximizing `sin²((2N+1) asin √p0)`, never below `p0`.
pub fn aa_rounds(p0: f64) -> Result<u32> {
    if !(p0 > 0.0 && p0 <= 1.0) {
        return Err(Error::invalid("p0", "must lie in (0, 1]"));
    }
    let theta = p0.sqrt().asin();
    let x = PI / (4.0 * theta) - 0.5;
    let lo = x.floor().max(0.0) as u32;
    let gain = |n: u32| ((2 * n + 1) as f64 * theta).sin().powi(2);
    let best = if gain(lo + 1) > gain(lo) + 1e-15 { lo + 1 } else { lo };
    Ok(if gain(best) >= p0 { best } else { 0 })
}

/// Amplified success amplitude `sin((2n+1) asin √p0)`.
pub fn amplified_amplitude(p0: f64, n_aa: u32) -> f64 {
    ((2 * n_aa + 1) as f64 * p0.sqrt().asin()).sin()
}

/// Wraps `u` in `n_aa` rounds of `G = -A S_0 A† S_χ`, where `S_χ` flips the sign
/// of `a_be_w = 0` and `S_0` of `|0⟩` on `(r_k, a_be_w)`. Both reflections kick
/// back through `aa_register`, which is prepared in `|−⟩` and returned to `|0⟩`.
pub fn wrap_amplitude_amplification(u: &PreparedWeights, n_aa: u32, aa_register: &str) -> Result<PreparedWeights> {
    if u.n_aa != 0 {
        return Err(Error::invalid("u", "already amplified"));
    }
    if n_aa == 0 {
        return Ok(u.clone());
    }
    let p0 = u.p0();
    let amp = amplified_amplitude(p0, n_aa);
    if amp * amp < p0 - 1e-15 {
        return Err(Error::AmplificationOvershoot {
            rounds: n_aa,
            probability: amp * amp,
            p0,
        });
    }
    let mut regs: Vec<(alloc::string::String, usize)> = u
        .circuit
        .layout()
        .registers()
        .iter()
        .map(|r| (r.name.to_string(), r.width))
        .collect();
    regs.push((aa_register.to_string(), 1));
    let layout = Arc::new(RegisterLayout::new(&regs)?);
    let aa = layout.qubit(aa_register, 0)?;
    let flag = layout.qubit(A_BE_W, 0)?;
    let all_zero: Vec<Control> = layout
        .qubit_list(R_K)?
        .into_iter()
        .chain([flag])
        .map(Control::zero)
        .collect();
    let a = u.circuit.embed(&layout)?;
    let a_dag = a.adjoint();

    let mut cb = CircuitBuilder::new(layout, &alloc::format!("AA[{}]", u.circuit.label()));
    cb.append(&a)?;
    cb.push(StmcGate::x(aa));
    cb.push(StmcGate::h(aa));
    for _ in 0..n_aa {
        cb.push(StmcGate::x(aa).ctrl0(flag));
        cb.append(&a_dag)?;
        cb.push(StmcGate::x(aa).with_controls(all_zero.iter().copied()));
        cb.append(&a)?;
        cb.push(StmcGate::rz(2.0 * PI, aa));
    }
    cb.push(StmcGate::h(aa));
    cb.push(StmcGate::x(aa));
    Ok(PreparedWeights {
        circuit: cb.build()?,
        success_amplitude: amp,
        raw_amplitude: u.raw_amplitude,
        n_aa,
        weight_scale: u.weight_scale,
    })
}

/// Exact preparation of `psi` on `qubits` from `|0⟩` by multiplexed `Ry`
/// rotations, most significant qubit first, and per-amplitude phases at the end.
pub fn state_prep_gates(psi: &[Complex64], qubits: &[usize]) -> Result<Vec<StmcGate>> {
    let n = qubits.len();
    if psi.len() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: psi.len(),
        });
    }
    let norm = l2_norm(psi);
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::invalid("psi0", "must be nonzero and finite"));
    }
    let mag: Vec<f64> = psi.iter().map(|z| z.norm() / norm).collect();
    let controls = |prefix: usize, level: usize| -> Vec<Control> {
        (level + 1..n)
            .map(|b| Control {
                qubit: qubits[b],
                on_one: (prefix >> (b - level - 1)) & 1 == 1,
            })
            .collect()
    };
    let mut gates = Vec::new();
    for level in (0..n).rev() {
        let block = 1usize << level;
        for prefix in 0..(1usize << (n - level - 1)) {
            let base = prefix << (level + 1);
            let lo: f64 = mag[base..base + block].iter().map(|m| m * m).sum::<f64>().sqrt();
            let hi: f64 = mag[base + block..base + 2 * block].iter().map(|m| m * m).sum::<f64>().sqrt();
            if hi == 0.0 {
                continue;
            }
            let angle = 2.0 * hi.atan2(lo);
            gates.push(StmcGate::ry(angle, qubits[level]).with_controls(controls(prefix, level)));
        }
    }
    // phases: for each pair on qubit 0, relative phase then a common phase
    let q0 = qubits.first().copied().ok_or_else(|| Error::invalid("qubits", "empty register"))?;
    for prefix in 0..(1usize << (n - 1)) {
        let (a, b) = (psi[2 * prefix], psi[2 * prefix + 1]);
        let p0 = if a.norm() > 0.0 { a.arg() } else { b.arg() };
        let p1 = if b.norm() > 0.0 { b.arg() } else { p0 };
        let ctl = controls(prefix, 0);
        if p1 != p0 {
            gates.push(StmcGate::phase(p1 - p0, q0).with_controls(ctl.clone()));
        }
        if p0 != 0.0 {
            gates.push(StmcGate::rz(-2.0 * p0, q0).with_controls(ctl.clone()));
            gates.push(StmcGate::phase(2.0 * p0, q0).with_controls(ctl));
        }
    }
    Ok(gates)
}

/// Flag-free weight oracle: prepares `Σ_j √(w_j/Σ|w|) |j⟩` exactly on `r_k`
/// (these amplitudes have unit norm), so no amplification is needed.
/// `conjugate` prepares the complex-conjugate amplitudes.
pub fn build_exact_sqrt_w(w: &WeightSet, conjugate: bool) -> Result<PreparedWeights> {
    let n = w.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::invalid("weights", "need 2^n_k weights with n_k ≥ 1"));
    }
    let scale = w.abs_sum();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid("weights", "all weights vanish"));
    }
    let amps: Vec<Complex64> = w
        .weights
        .iter()
        .map(|wj| {
            let r = (wj / scale).sqrt();
            if conjugate {
                r.conj()
            } else {
                r
            }
        })
        .collect();
    let layout = Arc::new(RegisterLayout::new(&[(R_K, n.trailing_zeros() as usize)])?);
    let gates = state_prep_gates(&amps, &layout.qubit_list(R_K)?)?;
    Ok(PreparedWeights {
        circuit: Circuit::from_gates(layout, gates, if conjugate { "P_sqrt_w_conj" } else { "P_sqrt_w" })?,
        success_amplitude: 1.0,
        raw_amplitude: 1.0,
        n_aa: 0,
        weight_scale: scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grover_round_counts() {
        assert_eq!(aa_rounds(1.0).unwrap(), 0);
        assert_eq!(aa_rounds(0.25).unwrap(), 1);
        assert!(aa_rounds(0.0).is_err());
        assert!((amplified_amplitude(0.25, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn angles_hit_target() {
        for w in [Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.0), Complex64::new(0.0, 0.0)] {
            let (py, pz) = angles(w);
            let amp = Complex64::from_polar(1.0, -pz / 2.0) * (py / 2.0).cos();
            assert!((amp - w.sqrt()).norm() < 1e-15);
        }
    }
}

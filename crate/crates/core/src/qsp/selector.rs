use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::chebyshev::{jacobi_anger, ChebyshevExpansion, Parity};
use super::phases::{solve_phases_scaled, QspPhaseSequence};
use crate::block_encoding::BlockEncoding;
use crate::linalg::DenseComplexMatrix;
use crate::sim::{extract_block, Circuit, CircuitBuilder, Control, RegisterLayout, StmcGate};
use crate::{Error, Result};

/// The selector's ancilla-zero block is `SELECTOR_BLOCK_SCALE · exp(-i C_j t)`:
/// `1/2` from the phase-solver rescaling and `1/2` from the cos/sin LCU.
pub const SELECTOR_BLOCK_SCALE: f64 = 0.25;

pub const A_QSP: &str = "a_qsp";

/// `2Π - I` with `Π = |0⟩⟨0|` on `a_be`.
pub fn reflection_gates(a_be: &[usize]) -> Vec<StmcGate> {
    let (first, rest) = a_be.split_first().expect("a_be is never empty");
    let zeros: Vec<Control> = rest.iter().map(|&q| Control::zero(q)).collect();
    alloc::vec![
        StmcGate::x(*first),
        StmcGate::phase(PI, *first).with_controls(zeros),
        StmcGate::x(*first),
        // Rz(2π) = -I turns I - 2Π into 2Π - I
        StmcGate::rz(2.0 * PI, *first),
    ]
}

/// Qubitization iterate `Q = (2Π - I) U_C`, reflecting on the `U_C` ancillas only.
pub fn iterate_q(u_c: &BlockEncoding) -> Result<Circuit> {
    let a_be = u_c.ancilla_qubits()?;
    let mut gates = u_c.circuit.gates().to_vec();
    gates.extend(reflection_gates(&a_be));
    Circuit::from_gates(u_c.circuit.layout_arc().clone(), gates, "Q")
}

/// Source of phase sequences; lets callers cache solves.
pub trait PhaseProvider {
    /// Phases realizing `e/2`; `eps` bounds the realized residual.
    fn phases(&mut self, e: &ChebyshevExpansion, eps: f64) -> Result<QspPhaseSequence>;
}

/// Solves every request from scratch.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectSolver;

impl PhaseProvider for DirectSolver {
    fn phases(&mut self, e: &ChebyshevExpansion, eps: f64) -> Result<QspPhaseSequence> {
        solve_phases_scaled(e, eps, 0.5)
    }
}

/// Degrees of the even and odd branches: they differ by one so both share
/// every iterate but the first.
pub fn selector_degrees(d_even: usize, d_odd: usize) -> (usize, usize) {
    let d = d_even.max(d_odd);
    if d % 2 == 1 {
        (d + 1, d)
    } else {
        (d, d + 1)
    }
}

/// A selector circuit and the data it was built from.
#[derive(Clone, Debug)]
pub struct Selector {
    pub circuit: Circuit,
    pub t: f64,
    pub alpha: f64,
    /// `alpha · t`
    pub tau: f64,
    pub eps_qsp: f64,
    pub even: QspPhaseSequence,
    pub odd: QspPhaseSequence,
    /// `U_C` applications along the longer branch.
    pub n_queries: usize,
    pub truncation_error: f64,
}

impl Selector {
    /// `exp(-i C_j t)` read from the ancilla-zero block (rescaled by `1/SELECTOR_BLOCK_SCALE`).
    pub fn block(&self, j: usize) -> Result<DenseComplexMatrix> {
        let l = self.circuit.layout();
        let r_k = l.qubit_list(crate::block_encoding::reg::R_K)?;
        let fixed: Vec<(usize, bool)> = r_k.iter().enumerate().map(|(b, &q)| (q, (j >> b) & 1 == 1)).collect();
        let r_in = l.qubit_list(crate::block_encoding::reg::R_IN)?;
        Ok(extract_block(&self.circuit, &r_in, &fixed)?.scale_real(1.0 / SELECTOR_BLOCK_SCALE))
    }
}

pub fn build_selector(u_c: &BlockEncoding, t: f64, eps_qsp: f64) -> Result<Selector> {
    build_selector_with(u_c, t, eps_qsp, &mut DirectSolver)
}

fn padded(e: &ChebyshevExpansion, degree: usize) -> ChebyshevExpansion {
    let mut p = e.clone();
    p.coefficients.resize(degree + 1, 0.0);
    p
}

/// Circuit phase for gadget `k` of a degree-`d` sequence; the offsets turn the
/// `W_x` product into the reflection-iterate product up to `(-1)^d`.
fn circuit_phase(phi: f64, k: usize, d: usize) -> f64 {
    if d == 0 {
        phi
    } else if k == 0 {
        phi - 3.0 * FRAC_PI_4
    } else if k == d {
        phi - FRAC_PI_4
    } else {
        phi - PI
    }
}

/// Builds the selector: on `|j⟩_{r_k} |0⟩_{a_be} |0⟩_{a_qsp} |ψ⟩` its
/// ancilla-zero block is `exp(-i C_j t)/4` for every `j` at once.
///
/// Layout: the `U_C` layout followed by `a_qsp (2)`. `a_qsp[0]` takes the real
/// part of the QSP response, `a_qsp[1]` combines the cos and sin branches.
pub fn build_selector_with(
    u_c: &BlockEncoding,
    t: f64,
    eps_qsp: f64,
    provider: &mut dyn PhaseProvider,
) -> Result<Selector> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", "must be finite and non-negative"));
    }
    if !(eps_qsp > 0.0 && eps_qsp < 1.0) {
        return Err(Error::invalid("eps_qsp", "must lie strictly between 0 and 1"));
    }
    let alpha = u_c.alpha;
    let tau = alpha * t;
    let (cos_e, sin_e) = jacobi_anger(tau, eps_qsp / 4.0)?;
    let (d_e, d_o) = selector_degrees(cos_e.degree(), sin_e.degree());
    let solve_eps = eps_qsp / 16.0;
    let even = provider.phases(&padded(&cos_e, d_e), solve_eps)?;
    let odd = provider.phases(&padded(&sin_e, d_o), solve_eps)?;
    for (seq, d, par) in [(&even, d_e, Parity::Even), (&odd, d_o, Parity::Odd)] {
        if seq.degree() != d || seq.parity != par || seq.scale != 0.5 {
            return Err(Error::invalid("phases", "provider returned a sequence of the wrong shape"));
        }
        if !(seq.residual <= solve_eps) {
            return Err(Error::PhaseSolver {
                residual: seq.residual,
                iterations: seq.iterations,
            });
        }
    }

    let mut regs: Vec<(alloc::string::String, usize)> = u_c
        .circuit
        .layout()
        .registers()
        .iter()
        .map(|r| (r.name.to_string(), r.width))
        .collect();
    regs.push((A_QSP.to_string(), 2));
    let layout = Arc::new(RegisterLayout::new(&regs)?);
    let q0 = layout.qubit(A_QSP, 0)?;
    let q1 = layout.qubit(A_QSP, 1)?;
    let q = iterate_q(u_c)?.embed(&layout)?;
    let a_be: Vec<usize> = {
        let mut v = Vec::new();
        for name in &u_c.ancilla_registers {
            v.extend(layout.qubits(name)?);
        }
        v
    };
    let flag: Vec<Control> = a_be.iter().map(|&a| Control::zero(a)).collect();

    // branch value of a_qsp[1]: 0 = even (cos), 1 = odd (sin)
    let long_is_odd = d_o > d_e;
    let long_ctl = Control { qubit: q1, on_one: long_is_odd };
    let short = d_e.min(d_o);
    let psi_even = |k: usize| circuit_phase(even.phases[k], k, d_e);
    let psi_odd = |k: usize| circuit_phase(odd.phases[k], k, d_o);
    let gadget = |cb: &mut CircuitBuilder, rz: &[(f64, Control)]| {
        cb.push(StmcGate::x(q0).with_controls(flag.iter().copied()));
        for &(psi, c) in rz {
            cb.push(StmcGate::rz(2.0 * psi, q0).with_controls([c]));
        }
        cb.push(StmcGate::x(q0).with_controls(flag.iter().copied()));
    };

    let mut cb = CircuitBuilder::new(layout.clone(), "selector");
    cb.push(StmcGate::h(q0));
    cb.push(StmcGate::h(q1));
    let top = short + 1;
    let top_phase = if long_is_odd { psi_odd(top) } else { psi_even(top) };
    gadget(&mut cb, &[(top_phase, long_ctl)]);
    cb.append_controlled(&q, &[long_ctl])?;
    for k in (0..=short).rev() {
        gadget(&mut cb, &[(psi_even(k), Control::zero(q1)), (psi_odd(k), Control::one(q1))]);
        if k > 0 {
            cb.append(&q)?;
        }
    }
    // odd branch carries (-1)^{d_o} = -1; multiplying by i yields cos - i sin
    cb.push(StmcGate::phase(FRAC_PI_2, q1));
    cb.push(StmcGate::h(q1));
    cb.push(StmcGate::h(q0));

    Ok(Selector {
        circuit: cb.build()?,
        t,
        alpha,
        tau,
        eps_qsp,
        truncation_error: cos_e.truncation_error + sin_e.truncation_error,
        even,
        odd,
        n_queries: top,
    })
}

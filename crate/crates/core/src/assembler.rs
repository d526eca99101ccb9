//! The full LCU circuit: weight oracle, selector, adjoint weight oracle and
//! post-selection of every ancilla together with `r_k`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use crate::block_encoding::{build_u_c, reg};
use crate::lchs::{classical_lchs_apply, compute_weights, AaRounds, HermitianSplit, LchsConfig, WeightSet};
use crate::linalg::{build_ade_matrix, expm, l2_distance, l2_norm, linf_distance, AdeParams, DenseComplexMatrix};
pub use crate::weights::state_prep_gates;
use crate::qsp::{build_selector_with, DirectSolver, PhaseProvider, Selector, A_QSP, SELECTOR_BLOCK_SCALE};
use crate::sim::{Circuit, CircuitBuilder, Control, GateCounts, RegisterLayout, StateVector, StmcGate};
use crate::weights::{
    aa_rounds, build_exact_sqrt_w, build_u_sqrt_w, build_u_sqrt_w_conjugate, wrap_amplitude_amplification, PreparedWeights, A_BE_W,
};
use crate::{Error, Result};

pub const A_AA0: &str = "a_aa0";
pub const A_AA1: &str = "a_aa1";

/// Qubits of the `U_C` ancilla register group.
pub const N_BE: usize = 5;
pub const N_QSP: usize = 2;
/// `a_be_w`, `a_aa0`, `a_aa1`.
pub const N_W: usize = 3;
/// Ancillas of an initial-state preparation circuit, counted but not emulated.
pub const N_INIT: usize = 2;

/// Register sizes of the full circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QubitBudget {
    pub n_in: usize,
    pub n_k: usize,
    pub n_be: usize,
    pub n_qsp: usize,
    pub n_w: usize,
    pub n_init: usize,
}

impl QubitBudget {
    pub fn total(&self) -> usize {
        self.n_in + self.n_k + self.n_be + self.n_qsp + self.n_w + self.n_init
    }
}

/// Budget of the full algorithm; `with_init` adds the initialization ancillas.
pub fn qubit_budget(n_x: u32, n_k: u32, weights: WeightPrep, with_init: bool) -> QubitBudget {
    QubitBudget {
        n_in: n_x as usize,
        n_k: n_k as usize,
        n_be: N_BE,
        n_qsp: N_QSP,
        n_w: if weights == WeightPrep::Ladder { N_W } else { 0 },
        n_init: if with_init { N_INIT } else { 0 },
    }
}

/// How `ψ0` enters `r_in`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InitMode {
    /// Written directly into the statevector.
    #[default]
    Inject,
    /// Prepared from `|0⟩` by multiplexed rotations.
    Circuit,
}

/// How the weight oracles are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WeightPrep {
    /// Controlled-rotation ladder with a flag qubit, wrapped in amplitude
    /// amplification (registers `a_be_w`, `a_aa0`, `a_aa1`).
    #[default]
    Ladder,
    /// Exact flag-free preparation on `r_k`; three qubits fewer.
    Exact,
}

/// Circuit construction choices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CircuitOptions {
    pub init: InitMode,
    pub weights: WeightPrep,
}

/// STMC gate counts of each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComponentCounts {
    pub init: GateCounts,
    pub weights_left: GateCounts,
    pub selector: GateCounts,
    pub weights_right: GateCounts,
    /// The flag gate that routes the weight-oracle garbage away from the result.
    pub flag: GateCounts,
}

impl ComponentCounts {
    pub fn total(&self) -> GateCounts {
        self.init + self.weights_left + self.selector + self.weights_right + self.flag
    }
}

/// A built circuit with everything needed to interpret its output.
#[derive(Clone, Debug)]
pub struct LchsCircuit {
    pub circuit: Circuit,
    pub weights: WeightSet,
    pub left: PreparedWeights,
    pub right: PreparedWeights,
    pub selector: Selector,
    pub counts: ComponentCounts,
    pub options: CircuitOptions,
}

impl LchsCircuit {
    pub fn n_qubits(&self) -> usize {
        self.circuit.layout().width()
    }

    /// Qubits post-selected on zero: everything except `r_in`.
    pub fn postselected_qubits(&self) -> Vec<usize> {
        self.circuit.layout().qubits_except(&[reg::R_IN])
    }

    /// Factor between the projected `r_in` amplitudes and `Σ_j w_j V_j ψ0`.
    pub fn amplitude_scale(&self) -> f64 {
        self.left.success_amplitude * self.right.success_amplitude * SELECTOR_BLOCK_SCALE / self.left.weight_scale
    }

    /// The same factor without amplitude amplification.
    pub fn raw_amplitude_scale(&self) -> f64 {
        self.left.raw_amplitude * self.right.raw_amplitude * SELECTOR_BLOCK_SCALE / self.left.weight_scale
    }
}

/// Layout of the full circuit, least significant register first.
pub fn lchs_layout(n_x: u32, n_k: u32, weights: WeightPrep) -> Result<Arc<RegisterLayout>> {
    let mut regs = vec![
        (reg::R_IN, n_x as usize),
        (reg::R_K, n_k as usize),
        (reg::A_X, 2),
        (reg::A_E, 1),
        (reg::A_LCU, 1),
        (reg::A_SIN, 1),
        (A_QSP, N_QSP),
    ];
    if weights == WeightPrep::Ladder {
        regs.extend([(A_BE_W, 1), (A_AA0, 1), (A_AA1, 1)]);
    }
    Ok(Arc::new(RegisterLayout::new(&regs)?))
}

fn resolve_rounds(cfg: &LchsConfig, p0: f64) -> Result<u32> {
    match cfg.aa_rounds {
        AaRounds::Auto => aa_rounds(p0),
        AaRounds::Fixed(n) => Ok(n),
    }
}

pub fn build_lchs_circuit(
    cfg: &LchsConfig,
    problem: &AdeParams,
    options: CircuitOptions,
    psi0: Option<&[Complex64]>,
) -> Result<LchsCircuit> {
    build_lchs_circuit_with(cfg, problem, options, psi0, &mut DirectSolver)
}

/// Builds the full circuit. With [`InitMode::Circuit`], `psi0` is required and
/// its preparation is prepended on `r_in`.
///
/// With the ladder oracles the selector is controlled on `a_be_w = 0` and the
/// `a_be_w = 1` branch flips `a_qsp[0]`, so the unflagged parts of the two
/// weight oracles never meet.
pub fn build_lchs_circuit_with(
    cfg: &LchsConfig,
    problem: &AdeParams,
    options: CircuitOptions,
    psi0: Option<&[Complex64]>,
    provider: &mut dyn PhaseProvider,
) -> Result<LchsCircuit> {
    cfg.validate()?;
    problem.validate()?;
    let n_x = problem.n_x;
    let layout = lchs_layout(n_x, cfg.n_k, options.weights)?;

    let a = build_ade_matrix(problem)?;
    let split = HermitianSplit::new(&a)?;
    let u_c = build_u_c(&split.a_l, &split.a_h, n_x, cfg.n_k, cfg.k_max)?;
    let selector = build_selector_with(&u_c, cfg.t, cfg.eps_qsp, provider)?;

    let weights = compute_weights(cfg)?;
    let (left, right) = match options.weights {
        WeightPrep::Ladder => {
            let u = build_u_sqrt_w(&weights)?;
            let n_aa = resolve_rounds(cfg, u.p0())?;
            let left = wrap_amplitude_amplification(&u, n_aa, A_AA0)?;
            let right = wrap_amplitude_amplification(&build_u_sqrt_w_conjugate(&weights)?, n_aa, A_AA1)?;
            (left, right)
        }
        WeightPrep::Exact => (build_exact_sqrt_w(&weights, false)?, build_exact_sqrt_w(&weights, true)?),
    };

    let q0 = layout.qubit(A_QSP, 0)?;
    let mut counts = ComponentCounts::default();
    let mut cb = CircuitBuilder::new(layout.clone(), "lchs");

    if options.init == InitMode::Circuit {
        let psi = psi0.ok_or_else(|| Error::invalid("psi0", "required for the circuit initialization mode"))?;
        let prep = Circuit::from_gates(layout.clone(), state_prep_gates(psi, &layout.qubit_list(reg::R_IN)?)?, "init")?;
        counts.init = prep.count_stmc();
        cb.append(&prep)?;
    }
    counts.weights_left = left.circuit.count_stmc();
    cb.append(&left.circuit)?;
    counts.selector = selector.circuit.count_stmc();
    match options.weights {
        WeightPrep::Ladder => {
            let flag = layout.qubit(A_BE_W, 0)?;
            cb.append_controlled(&selector.circuit, &[Control::zero(flag)])?;
            cb.push(StmcGate::x(q0).ctrl(flag));
            counts.flag.x += 1;
        }
        WeightPrep::Exact => {
            cb.append(&selector.circuit)?;
        }
    }
    let right_dag = right.circuit.adjoint();
    counts.weights_right = right_dag.count_stmc();
    cb.append(&right_dag)?;

    Ok(LchsCircuit {
        circuit: cb.build()?,
        weights,
        left,
        right,
        selector,
        counts,
        options,
    })
}

/// `(l2, linf)` distances.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorPair {
    pub l2: f64,
    pub linf: f64,
}

impl ErrorPair {
    pub fn between(a: &[Complex64], b: &[Complex64]) -> Self {
        Self {
            l2: l2_distance(a, b),
            linf: linf_distance(a, b),
        }
    }
}

/// Outcome of one circuit run.
#[derive(Clone, Debug)]
pub struct LchsRunResult {
    pub config: LchsConfig,
    pub problem: AdeParams,
    pub options: CircuitOptions,
    /// `ψ(t)` with the physical scale restored.
    pub psi_out: Vec<Complex64>,
    /// `psi_out` normalized to unit length.
    pub psi_out_normalized: Vec<Complex64>,
    /// Squared norm of the post-selected state.
    pub success_probability: f64,
    /// `success_probability` predicted from the classical sum.
    pub predicted_success_probability: f64,
    /// Predicted probability without amplitude amplification.
    pub raw_success_probability: f64,
    pub counts: ComponentCounts,
    pub n_qubits: usize,
    pub n_queries: usize,
    pub n_aa: u32,
    pub alpha_c: f64,
    pub tau: f64,
    pub weight_scale: f64,
    pub weight_sum: Complex64,
    pub err_vs_expm: ErrorPair,
    pub err_vs_expm_normalized: ErrorPair,
    pub err_vs_discrete_sum: ErrorPair,
    pub err_vs_discrete_sum_normalized: ErrorPair,
    /// `‖exp(-A t) ψ0‖`.
    pub exact_norm: f64,
}

fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = l2_norm(v);
    if n > 0.0 {
        v.iter().map(|z| z / n).collect()
    } else {
        v.to_vec()
    }
}

/// Ground truth `exp(-A t) ψ0`.
pub fn exact_solution(problem: &AdeParams, t: f64, psi0: &[Complex64]) -> Result<Vec<Complex64>> {
    let a = build_ade_matrix(problem)?;
    expm(&a.scale_real(-t))?.matvec(psi0)
}

pub fn run(cfg: &LchsConfig, problem: &AdeParams, psi0: &[Complex64], options: CircuitOptions) -> Result<LchsRunResult> {
    run_with(cfg, problem, psi0, options, &mut DirectSolver)
}

/// Builds, simulates and post-selects; compares against both classical oracles.
pub fn run_with(
    cfg: &LchsConfig,
    problem: &AdeParams,
    psi0: &[Complex64],
    options: CircuitOptions,
    provider: &mut dyn PhaseProvider,
) -> Result<LchsRunResult> {
    if psi0.len() != problem.n_points() {
        return Err(Error::DimensionMismatch {
            expected: problem.n_points(),
            found: psi0.len(),
        });
    }
    if !((l2_norm(psi0) - 1.0).abs() <= 1e-10) {
        return Err(Error::invalid("psi0", "must have unit norm"));
    }
    let lc = build_lchs_circuit_with(cfg, problem, options, Some(psi0), provider)?;
    let layout = lc.circuit.layout_arc().clone();
    let mut state = match options.init {
        InitMode::Inject => StateVector::from_register(layout, reg::R_IN, psi0)?,
        InitMode::Circuit => StateVector::zero(layout),
    };
    state.apply(&lc.circuit)?;
    let success_probability = state.project_zero(&lc.postselected_qubits())?;
    if !(success_probability > 0.0) {
        return Err(Error::ZeroProbability);
    }
    let projected: Vec<Complex64> = state.amplitudes()[..problem.n_points()].to_vec();
    let scale = lc.amplitude_scale();
    let psi_out: Vec<Complex64> = projected.iter().map(|z| z / scale).collect();

    let a = build_ade_matrix(problem)?;
    let discrete = classical_lchs_apply(&a, psi0, cfg)?;
    let exact = exact_solution(problem, cfg.t, psi0)?;
    let out_n = normalized(&psi_out);
    let d_norm = l2_norm(&discrete);

    Ok(LchsRunResult {
        config: *cfg,
        problem: *problem,
        options,
        success_probability,
        predicted_success_probability: (scale * d_norm).powi(2),
        raw_success_probability: (lc.raw_amplitude_scale() * d_norm).powi(2),
        counts: lc.counts,
        n_qubits: lc.n_qubits(),
        n_queries: lc.selector.n_queries,
        n_aa: lc.left.n_aa,
        alpha_c: lc.selector.alpha,
        tau: lc.selector.tau,
        weight_scale: lc.left.weight_scale,
        weight_sum: lc.weights.sum(),
        err_vs_expm: ErrorPair::between(&psi_out, &exact),
        err_vs_expm_normalized: ErrorPair::between(&out_n, &normalized(&exact)),
        err_vs_discrete_sum: ErrorPair::between(&psi_out, &discrete),
        err_vs_discrete_sum_normalized: ErrorPair::between(&out_n, &normalized(&discrete)),
        exact_norm: l2_norm(&exact),
        psi_out_normalized: out_n,
        psi_out,
    })
}

/// The `r_in` block of the whole circuit divided by its amplitude scale; equals
/// `Σ_j w_j exp(-i C_j t)` when the circuit is exact. Only for small layouts.
pub fn effective_operator(lc: &LchsCircuit) -> Result<DenseComplexMatrix> {
    let l = lc.circuit.layout();
    let r_in = l.qubit_list(reg::R_IN)?;
    let block = crate::sim::extract_block(&lc.circuit, &r_in, &[])?;
    Ok(block.scale_real(1.0 / lc.amplitude_scale()))
}

/// Description of a register layout as `(name, width)` pairs.
pub fn layout_summary(layout: &RegisterLayout) -> Vec<(String, usize)> {
    layout.registers().iter().map(|r| (r.name.clone(), r.width)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::GateKind;

    #[test]
    fn budget_of_the_flagship_run() {
        let b = qubit_budget(6, 12, WeightPrep::Ladder, true);
        assert_eq!((b.n_be, b.n_w, b.n_init, b.n_qsp), (5, 3, 2, 2));
        assert_eq!(b.total(), 30);
        assert!(lchs_layout(6, 12, WeightPrep::Ladder).is_err());
        assert_eq!(lchs_layout(4, 6, WeightPrep::Ladder).unwrap().width(), 20);
        assert_eq!(lchs_layout(4, 6, WeightPrep::Exact).unwrap().width(), 17);
    }

    #[test]
    fn prep_global_phase_identity() {
        // Phase(φ)·Rz(-φ) is a global phase e^{iφ/2}
        let phi = 0.7;
        let p = GateKind::Phase(phi).matrix();
        let r = GateKind::Rz(-phi).matrix();
        let g = Complex64::from_polar(1.0, phi / 2.0);
        assert!((p[0][0] * r[0][0] - g).norm() < 1e-15);
        assert!((p[1][1] * r[1][1] - g).norm() < 1e-15);
    }
}

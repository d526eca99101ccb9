//! Block-encoding oracles: the sine subcircuit, periodic tridiagonal
//! Hermitian matrices and the combined oracle `U_C`.
//!
//! Every oracle built here is Hermitian as a unitary (`U = U†`), which is what
//! the qubitization iterate in [`crate::qsp`] needs.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use crate::linalg::DenseComplexMatrix;
use crate::sim::{extract_block, Circuit, CircuitBuilder, Control, RegisterLayout, StmcGate};
use crate::{Error, Result};

/// Register names shared by the builders.
pub mod reg {
    pub const R_IN: &str = "r_in";
    pub const R_K: &str = "r_k";
    pub const A_X: &str = "a_x";
    pub const A_E: &str = "a_e";
    pub const A_LCU: &str = "a_lcu";
    pub const A_SIN: &str = "a_sin";
}

/// Ancilla registers of `U_C`, in layout order.
pub const U_C_ANCILLAS: [&str; 4] = [reg::A_X, reg::A_E, reg::A_LCU, reg::A_SIN];

/// A circuit whose ancilla-zero block encodes `M_j / alpha` for every value `j`
/// of the index register.
#[derive(Clone, Debug)]
pub struct BlockEncoding {
    pub circuit: Circuit,
    pub ancilla_registers: Vec<String>,
    pub index_register: Option<String>,
    pub data_register: Option<String>,
    /// Sub-normalization; zero marks the encoding of the zero matrix.
    pub alpha: f64,
}

impl BlockEncoding {
    pub fn ancilla_qubits(&self) -> Result<Vec<usize>> {
        let l = self.circuit.layout();
        let mut q = Vec::new();
        for name in &self.ancilla_registers {
            q.extend(l.qubits(name)?);
        }
        Ok(q)
    }

    fn register_qubits(&self, name: &Option<String>) -> Result<Vec<usize>> {
        match name {
            Some(n) => self.circuit.layout().qubit_list(n),
            None => Ok(Vec::new()),
        }
    }

    pub fn index_qubits(&self) -> Result<Vec<usize>> {
        self.register_qubits(&self.index_register)
    }

    pub fn data_qubits(&self) -> Result<Vec<usize>> {
        self.register_qubits(&self.data_register)
    }

    /// Ancilla-zero block for index value `j` (ignored without an index register).
    pub fn block(&self, j: usize) -> Result<DenseComplexMatrix> {
        let fixed: Vec<(usize, bool)> = self
            .index_qubits()?
            .into_iter()
            .enumerate()
            .map(|(b, q)| (q, (j >> b) & 1 == 1))
            .collect();
        extract_block(&self.circuit, &self.data_qubits()?, &fixed)
    }

    /// `alpha · block(j)`.
    pub fn encoded(&self, j: usize) -> Result<DenseComplexMatrix> {
        Ok(self.block(j)?.scale_real(self.alpha))
    }

    pub fn is_null(&self) -> bool {
        self.alpha == 0.0
    }
}

/// Periodic tridiagonal matrix with constant diagonals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandedSpec {
    pub lower: Complex64,
    pub main: Complex64,
    pub upper: Complex64,
    pub periodic: bool,
}

impl BandedSpec {
    pub fn periodic(lower: Complex64, main: Complex64, upper: Complex64) -> Self {
        Self {
            lower,
            main,
            upper,
            periodic: true,
        }
    }

    /// Reads the diagonals of a circulant tridiagonal matrix (dimension ≥ 4).
    pub fn from_matrix(m: &DenseComplexMatrix) -> Result<Self> {
        let n = m.dim();
        if n < 4 {
            return Err(Error::invalid("matrix", "banded specs need dimension ≥ 4"));
        }
        let spec = Self::periodic(m[(0, n - 1)], m[(0, 0)], m[(0, 1)]);
        let tol = 1e-12 * m.max_abs().max(1.0);
        if spec.to_matrix_dim(n).max_abs_diff(m)? > tol {
            return Err(Error::invalid("matrix", "not a periodic tridiagonal matrix with constant diagonals"));
        }
        Ok(spec)
    }

    pub fn to_matrix(&self, n_x: u32) -> DenseComplexMatrix {
        self.to_matrix_dim(1 << n_x)
    }

    fn to_matrix_dim(&self, n: usize) -> DenseComplexMatrix {
        let mut m = DenseComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] += self.main;
            if self.periodic || i + 1 < n {
                m[(i, (i + 1) % n)] += self.upper;
            }
            if self.periodic || i > 0 {
                m[(i, (i + n - 1) % n)] += self.lower;
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.lower == Complex64::new(0.0, 0.0) && self.main == Complex64::new(0.0, 0.0) && self.upper == Complex64::new(0.0, 0.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.main.im.abs() <= tol && (self.lower - self.upper.conj()).norm() <= tol
    }
}

/// Normalizations `η` and rotation angles `ζ` of a banded oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaAngles {
    pub eta_main: f64,
    pub eta_off: f64,
    /// `2 arccos(|m_0| / η_main)`
    pub zeta_main: f64,
    /// `2 arccos(|m_{+1}| / η_off)`
    pub zeta_y_off: f64,
    /// `-2 arg(m_{+1} / η_off)`
    pub zeta_z_off: f64,
}

impl ZetaAngles {
    /// `η` equal to the largest modulus on each diagonal.
    pub fn max_modulus(spec: &BandedSpec) -> Result<Self> {
        Self::with_etas(spec, spec.main.norm(), spec.upper.norm())
    }

    pub fn with_etas(spec: &BandedSpec, eta_main: f64, eta_off: f64) -> Result<Self> {
        let angle = |m: Complex64, eta: f64| -> Result<f64> {
            if m.norm() == 0.0 {
                return Ok(PI);
            }
            let ratio = m.norm() / eta;
            if !(ratio <= 1.0) {
                return Err(Error::InvalidSubnormalization { ratio });
            }
            Ok(2.0 * ratio.acos())
        };
        Ok(Self {
            eta_main: if spec.main.norm() == 0.0 { 0.0 } else { eta_main },
            eta_off: if spec.upper.norm() == 0.0 { 0.0 } else { eta_off },
            zeta_main: angle(spec.main, eta_main)?,
            zeta_y_off: angle(spec.upper, eta_off)?,
            zeta_z_off: -2.0 * spec.upper.arg(),
        })
    }

    /// `η_main + 2 η_off`.
    pub fn alpha(&self) -> f64 {
        self.eta_main + 2.0 * self.eta_off
    }
}

/// `|x⟩ → |x + 1 mod 2^n⟩` on `qubits` (LSB first), every gate carrying `extra`.
pub fn increment_gates(qubits: &[usize], extra: &[Control]) -> Vec<StmcGate> {
    shift_gates(qubits, extra, true)
}

/// `|x⟩ → |x - 1 mod 2^n⟩`.
pub fn decrement_gates(qubits: &[usize], extra: &[Control]) -> Vec<StmcGate> {
    shift_gates(qubits, extra, false)
}

fn shift_gates(qubits: &[usize], extra: &[Control], up: bool) -> Vec<StmcGate> {
    (0..qubits.len())
        .rev()
        .map(|k| {
            StmcGate::x(qubits[k])
                .with_controls(qubits[..k].iter().map(|&q| Control { qubit: q, on_one: up }))
                .with_controls(extra.iter().copied())
        })
        .collect()
}

/// Block-encodes a Hermitian periodic tridiagonal matrix on `2^n_x` points.
///
/// Layout: `r_in (n_x)`, `a_x (2)`, `a_e (1)`. Qubit `a_x[1]` selects the
/// diagonal term or the shift pair; `a_x[0]` selects the shift direction.
pub fn be_banded_hermitian(spec: &BandedSpec, n_x: u32, angles: &ZetaAngles) -> Result<BlockEncoding> {
    if !(2..=20).contains(&n_x) {
        return Err(Error::invalid("n_x", "must lie in 2..=20"));
    }
    if !spec.periodic {
        return Err(Error::invalid("spec", "only periodic boundaries are supported"));
    }
    let scale = spec.main.norm().max(spec.upper.norm()).max(spec.lower.norm());
    if !spec.is_hermitian(1e-14 * scale.max(1.0)) {
        return Err(Error::invalid("spec", "banded matrix is not Hermitian"));
    }
    let layout = Arc::new(RegisterLayout::new(&[(reg::R_IN, n_x as usize), (reg::A_X, 2), (reg::A_E, 1)])?);
    let r_in = layout.qubit_list(reg::R_IN)?;
    let b = layout.qubit(reg::A_X, 0)?;
    let c = layout.qubit(reg::A_X, 1)?;
    let e = layout.qubit(reg::A_E, 0)?;
    let mut cb = CircuitBuilder::new(layout, "U_banded");
    let ancillas = vec![reg::A_X.to_string(), reg::A_E.to_string()];

    let has_main = spec.main.norm() > 0.0;
    let has_off = spec.upper.norm() > 0.0;
    if !has_main && !has_off {
        cb.push(StmcGate::x(e));
        return Ok(BlockEncoding {
            circuit: cb.build()?,
            ancilla_registers: ancillas,
            index_register: None,
            data_register: Some(reg::R_IN.to_string()),
            alpha: 0.0,
        });
    }
    let alpha = angles.alpha();
    let lcu = has_main && has_off;
    let prep = if lcu { 2.0 * (angles.eta_main / alpha).sqrt().acos() } else { 0.0 };
    let branch = |v: bool| if lcu { vec![Control { qubit: c, on_one: v }] } else { Vec::new() };

    if lcu {
        cb.push(StmcGate::ry(prep, c));
    }
    if has_main {
        let ctl = branch(false);
        // Ry(ζ) Z on a_e: Hermitian with ⟨0|·|0⟩ = |m_0|/η
        cb.push(StmcGate::phase(PI, e).with_controls(ctl.clone()));
        cb.push(StmcGate::ry(angles.zeta_main, e).with_controls(ctl.clone()));
        if spec.main.re < 0.0 {
            cb.push(StmcGate::rz(2.0 * PI, e).with_controls(ctl));
        }
    }
    if has_off {
        let ctl = branch(true);
        let dir = |v: bool| {
            let mut k = ctl.clone();
            k.push(Control { qubit: b, on_one: v });
            k
        };
        // H · (|1⟩⟨0| P + |0⟩⟨1| P†) · H with P = e^{-iγ} S†, γ = arg m_{+1}
        cb.push(StmcGate::h(b).with_controls(ctl.clone()));
        cb.push(StmcGate::x(b).with_controls(ctl.clone()));
        cb.push(StmcGate::rz(angles.zeta_z_off, b).with_controls(ctl.clone()));
        cb.extend(increment_gates(&r_in, &dir(true)));
        cb.extend(decrement_gates(&r_in, &dir(false)));
        cb.push(StmcGate::h(b).with_controls(ctl.clone()));
        cb.push(StmcGate::phase(PI, e).with_controls(ctl.clone()));
        cb.push(StmcGate::ry(angles.zeta_y_off, e).with_controls(ctl));
    }
    if lcu {
        cb.push(StmcGate::ry(-prep, c));
    }
    Ok(BlockEncoding {
        circuit: cb.build()?,
        ancilla_registers: ancillas,
        index_register: None,
        data_register: Some(reg::R_IN.to_string()),
        alpha,
    })
}

/// Rotation gates of the sine oracle on `a_sin`, controlled by `r_k` bits and `extra`.
fn sine_gates(r_k: &[usize], a_sin: usize, extra: &[Control]) -> Vec<StmcGate> {
    let n_k = r_k.len();
    let big_n = (1u64 << n_k) as f64;
    let alpha0 = -FRAC_PI_2;
    let alpha1 = FRAC_PI_2 * big_n / (big_n - 1.0);
    let mut gates = Vec::with_capacity(n_k + 2);
    gates.push(StmcGate::ry(2.0 * alpha0, a_sin).with_controls(extra.iter().copied()));
    // level l counts from the most significant bit of r_k
    for l in 0..n_k {
        let q = r_k[n_k - 1 - l];
        gates.push(
            StmcGate::ry(2.0 * alpha1 / (1u64 << l) as f64, a_sin)
                .with_controls([Control::one(q)])
                .with_controls(extra.iter().copied()),
        );
    }
    // X makes the oracle Hermitian while keeping ⟨0|·|0⟩ = sin θ_j
    gates.push(StmcGate::x(a_sin).with_controls(extra.iter().copied()));
    gates
}

/// Oracle with `⟨0|_{a_sin} U |j⟩|0⟩ = sin(θ_j) |j⟩`, `alpha = 1`.
///
/// Layout: `r_k (n_k)`, `a_sin (1)`.
pub fn sine_circuit(n_k: u32) -> Result<BlockEncoding> {
    if !(1..=crate::lchs::MAX_NK).contains(&n_k) {
        return Err(Error::invalid("n_k", "must lie in 1..=24"));
    }
    let layout = Arc::new(RegisterLayout::new(&[(reg::R_K, n_k as usize), (reg::A_SIN, 1)])?);
    let r_k = layout.qubit_list(reg::R_K)?;
    let a = layout.qubit(reg::A_SIN, 0)?;
    let circuit = Circuit::from_gates(layout, sine_gates(&r_k, a, &[]), "U_sin")?;
    Ok(BlockEncoding {
        circuit,
        ancilla_registers: vec![reg::A_SIN.to_string()],
        index_register: Some(reg::R_K.to_string()),
        data_register: None,
        alpha: 1.0,
    })
}

/// Layout of `U_C`: `r_in, r_k, a_x(2), a_e, a_lcu, a_sin`.
pub fn u_c_layout(n_x: u32, n_k: u32) -> Result<Arc<RegisterLayout>> {
    Ok(Arc::new(RegisterLayout::new(&[
        (reg::R_IN, n_x as usize),
        (reg::R_K, n_k as usize),
        (reg::A_X, 2),
        (reg::A_E, 1),
        (reg::A_LCU, 1),
        (reg::A_SIN, 1),
    ])?))
}

/// Combines `U_{A_H}` and `U_{A_L}` with the sine oracle into one encoding of
/// `C_j = A_H + k_max sin(θ_j) A_L` for every `j`, with
/// `alpha_C = alpha_H + k_max alpha_L`.
pub fn assemble_u_c(be_ah: &BlockEncoding, be_al: &BlockEncoding, sine: &BlockEncoding, k_max: f64) -> Result<BlockEncoding> {
    if !(k_max.is_finite() && k_max > 0.0) {
        return Err(Error::invalid("k_max", "must be positive and finite"));
    }
    let width = |be: &BlockEncoding, name: &str| be.circuit.layout().register(name).map(|r| r.width);
    let n_x = width(be_ah, reg::R_IN).ok_or_else(|| Error::Layout("A_H oracle lacks r_in".into()))?;
    if width(be_al, reg::R_IN) != Some(n_x) {
        return Err(Error::Layout("A_H and A_L oracles act on different r_in widths".into()));
    }
    let n_k = width(sine, reg::R_K).ok_or_else(|| Error::Layout("sine oracle lacks r_k".into()))?;
    let layout = u_c_layout(n_x as u32, n_k as u32)?;
    let lcu = layout.qubit(reg::A_LCU, 0)?;

    let w_h = be_ah.alpha;
    let w_l = k_max * be_al.alpha;
    let alpha = w_h + w_l;
    if alpha == 0.0 {
        return Err(Error::invalid("U_C", "both A_H and A_L are zero"));
    }
    let cos2 = w_h / alpha;
    let sin2 = w_l / alpha;
    if ((cos2 + sin2) * alpha - (w_h + w_l)).abs() > 1e-12 * alpha {
        return Err(Error::BranchWeights {
            sum: (cos2 + sin2) * alpha,
            alpha,
        });
    }

    let mut cb = CircuitBuilder::new(layout.clone(), "U_C");
    match (be_ah.is_null(), be_al.is_null()) {
        (false, false) => {
            let prep = 2.0 * cos2.sqrt().acos();
            cb.push(StmcGate::ry(prep, lcu));
            cb.append_controlled(&be_ah.circuit, &[Control::zero(lcu)])?;
            cb.append_controlled(&be_al.circuit, &[Control::one(lcu)])?;
            cb.append_controlled(&sine.circuit, &[Control::one(lcu)])?;
            cb.push(StmcGate::ry(-prep, lcu));
        }
        (false, true) => {
            cb.append(&be_ah.circuit)?;
        }
        (true, false) => {
            cb.append(&be_al.circuit)?;
            cb.append(&sine.circuit)?;
        }
        (true, true) => unreachable!("alpha is nonzero"),
    }
    Ok(BlockEncoding {
        circuit: cb.build()?,
        ancilla_registers: U_C_ANCILLAS.iter().map(|s| s.to_string()).collect(),
        index_register: Some(reg::R_K.to_string()),
        data_register: Some(reg::R_IN.to_string()),
        alpha,
    })
}

/// Builds `U_C` for the split `(A_L, A_H)` of a periodic tridiagonal `A`.
pub fn build_u_c(a_l: &DenseComplexMatrix, a_h: &DenseComplexMatrix, n_x: u32, n_k: u32, k_max: f64) -> Result<BlockEncoding> {
    let spec_h = BandedSpec::from_matrix(a_h)?;
    let spec_l = BandedSpec::from_matrix(a_l)?;
    let be_h = be_banded_hermitian(&spec_h, n_x, &ZetaAngles::max_modulus(&spec_h)?)?;
    let be_l = be_banded_hermitian(&spec_l, n_x, &ZetaAngles::max_modulus(&spec_l)?)?;
    assemble_u_c(&be_h, &be_l, &sine_circuit(n_k)?, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lchs::theta_grid;
    use crate::sim::circuit_to_matrix;

    #[test]
    fn shifts_are_inverse_cycles() {
        let layout = Arc::new(RegisterLayout::new(&[("r", 3)]).unwrap());
        let q = layout.qubit_list("r").unwrap();
        let inc = Circuit::from_gates(layout.clone(), increment_gates(&q, &[]), "inc").unwrap();
        let m = circuit_to_matrix(&inc).unwrap();
        for x in 0..8 {
            assert_eq!(m[((x + 1) % 8, x)].re, 1.0);
        }
        let dec = Circuit::from_gates(layout, decrement_gates(&q, &[]), "dec").unwrap();
        let d = circuit_to_matrix(&dec).unwrap();
        assert!((&m * &d).max_abs_diff(&DenseComplexMatrix::identity(8)).unwrap() < 1e-15);
    }

    #[test]
    fn sine_endpoints() {
        let be = sine_circuit(3).unwrap();
        let g = theta_grid(3, 1.0).unwrap();
        for j in 0..8 {
            let b = be.block(j).unwrap();
            assert!((b[(0, 0)].re - g.thetas[j].sin()).abs() < 1e-13);
        }
        assert!((be.block(0).unwrap()[(0, 0)].re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn eta_override_validated() {
        let spec = BandedSpec::periodic(Complex64::new(0.0, 1.5), Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.5));
        assert!(matches!(
            ZetaAngles::with_etas(&spec, 1.0, 1.0),
            Err(Error::InvalidSubnormalization { .. })
        ));
        let z = ZetaAngles::with_etas(&spec, 1.0, 3.0).unwrap();
        assert_eq!(z.eta_main, 0.0);
        assert!((z.alpha() - 6.0).abs() < 1e-15);
    }

    #[test]
    fn zero_spec_encodes_zero() {
        let zero = Complex64::new(0.0, 0.0);
        let spec = BandedSpec::periodic(zero, zero, zero);
        let be = be_banded_hermitian(&spec, 2, &ZetaAngles::max_modulus(&spec).unwrap()).unwrap();
        assert_eq!(be.block(0).unwrap().max_abs(), 0.0);
    }
}

use alloc::sync::Arc;
use alloc::vec;

use num_complex::Complex64;

use super::circuit::Circuit;
use super::state::apply_kernel;
use crate::linalg::DenseComplexMatrix;
use crate::{Error, Result};

/// Widest circuit [`circuit_to_matrix`] will expand.
pub const MAX_MATRIX_QUBITS: usize = 14;

/// The full `2^n x 2^n` unitary; column `i` is the image of basis state `i`.
pub fn circuit_to_matrix(c: &Circuit) -> Result<DenseComplexMatrix> {
    let n = c.layout().width();
    if n > MAX_MATRIX_QUBITS {
        return Err(Error::TooManyQubits {
            width: n,
            limit: MAX_MATRIX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut m = DenseComplexMatrix::zeros(dim);
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        col.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        col[i] = Complex64::new(1.0, 0.0);
        for g in c.gates() {
            apply_kernel(&mut col, g);
        }
        for (r, z) in col.iter().enumerate() {
            m[(r, i)] = *z;
        }
    }
    Ok(m)
}

/// The block `⟨f| U |f⟩` over `system` qubits, where `|f⟩` fixes every qubit in
/// `fixed` to the given value (`true` = `|1⟩`) on both sides. Bit `b` of the
/// block index is `system[b]`. Qubits in neither list are fixed to `|0⟩`.
pub fn extract_block(c: &Circuit, system: &[usize], fixed: &[(usize, bool)]) -> Result<DenseComplexMatrix> {
    let width = c.layout().width();
    for &q in system.iter().chain(fixed.iter().map(|(q, _)| q)) {
        if q >= width {
            return Err(Error::QubitOutOfRange { qubit: q, width });
        }
    }
    let base = fixed
        .iter()
        .filter(|(_, one)| *one)
        .fold(0usize, |acc, (q, _)| acc | 1 << q);
    let index = |i: usize| {
        system
            .iter()
            .enumerate()
            .fold(base, |acc, (b, &q)| acc | (((i >> b) & 1) << q))
    };
    let dim = 1usize << system.len();
    let layout: Arc<_> = c.layout_arc().clone();
    let mut m = DenseComplexMatrix::zeros(dim);
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for col in 0..dim {
        amps.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        amps[index(col)] = Complex64::new(1.0, 0.0);
        for g in c.gates() {
            apply_kernel(&mut amps, g);
        }
        for row in 0..dim {
            m[(row, col)] = amps[index(row)];
        }
    }
    Ok(m)
}

//! Gate-level emulation of the linear combination of Hamiltonian simulations
//! (LCHS) for dissipative linear ODEs `dψ/dt = -A ψ`.
//!
//! The crate is `no_std` (with `alloc`) and contains everything algorithmic:
//!
//! * [`linalg`]: dense complex matrices, the Hermitian split `A = A_L + i A_H`,
//!   matrix exponentials and the advection-diffusion reference problem.
//! * [`lchs`]: kernels, the θ-grid, complex weights and the classical
//!   discretized-sum oracle.
//! * [`sim`]: a statevector engine over named registers driven by
//!   single-target multi-controlled (STMC) gates.
//! * [`block_encoding`]: the sine subcircuit, banded periodic oracles and the
//!   combined oracle `U_C` encoding every `C_j` at once.
//! * [`qsp`]: Jacobi-Anger targets, phase factors, the qubitization iterate
//!   and the selector that applies `exp(-i C_j t)` for all `j` in one circuit.
//! * [`weights`]: the brute-force `sqrt(w_j)` ladder and amplitude amplification.
//! * [`assembler`]: the full LCU circuit, its execution and error reporting.
//!
//! Qubit ordering is little-endian: the first register of a layout occupies the
//! lowest bits of the state index, and qubit 0 of a register is its least
//! significant bit.
#![no_std]

extern crate alloc;


pub mod assembler;
pub mod block_encoding;
mod error;
pub mod lchs;
pub mod linalg;
pub mod qsp;
pub mod sim;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Statevector emulation over named registers.
//!
//! Registers are laid out little-endian: the first register of a
//! [`RegisterLayout`] holds the lowest bits of the amplitude index and qubit 0
//! of each register is its least significant bit.

mod circuit;
mod gate;
mod layout;
mod matrix;
mod state;
mod text;

pub use circuit::{Circuit, CircuitBuilder, GateCounts};
pub use gate::{Control, GateKind, StmcGate};
pub use layout::{Register, RegisterLayout, MAX_QUBITS};
pub use matrix::{circuit_to_matrix, extract_block, MAX_MATRIX_QUBITS};
pub use state::{apply, StateVector};

//! Quantum signal processing: Jacobi-Anger targets, phase factors, the
//! qubitization iterate and the selector applying `exp(-i C_j t)` for every
//! `j` in one circuit.

mod bessel;
mod chebyshev;
mod phases;
mod selector;

pub use bessel::bessel_j_sequence;
pub use chebyshev::{jacobi_anger, ChebyshevExpansion, Parity, QspTarget, JACOBI_ANGER_ORDER_CAP};
pub use phases::{qsp_response, solve_phases, solve_phases_scaled, QspPhaseSequence};

pub use selector::{
    build_selector, build_selector_with, iterate_q, reflection_gates, selector_degrees, DirectSolver, PhaseProvider,
    Selector, A_QSP, SELECTOR_BLOCK_SCALE,
};

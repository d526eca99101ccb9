use std::sync::Arc;

use lchs_core::lchs::{compute_weights, Kernel, LchsConfig};
use lchs_core::sim::{apply, RegisterLayout, StateVector};
use lchs_core::weights::{
    aa_rounds, amplified_amplitude, build_u_sqrt_w, build_u_sqrt_w_conjugate, wrap_amplitude_amplification, A_BE_W,
};
use lchs_core::Complex64;

fn cfg(n_k: u32, k_max: f64) -> LchsConfig {
    LchsConfig {
        kernel: Kernel::Improved,
        beta: 0.7,
        k_max,
        n_k,
        ..LchsConfig::default()
    }
}

fn flagged_amplitudes(c: &lchs_core::sim::Circuit) -> Vec<Complex64> {
    let s = apply(c, StateVector::zero(c.layout_arc().clone())).unwrap();
    s.register_amplitudes("r_k").unwrap()
}

#[test]
fn ladder_reproduces_sqrt_weights() {
    let w = compute_weights(&cfg(3, 10.0)).unwrap();
    let u = build_u_sqrt_w(&w).unwrap();
    let amps = flagged_amplitudes(&u.circuit);
    let n = w.len() as f64;
    for (a, wj) in amps.iter().zip(&w.weights) {
        let got = a * (n * u.weight_scale).sqrt();
        assert!((got - wj.sqrt()).norm() < 1e-12);
    }
    let uc = build_u_sqrt_w_conjugate(&w).unwrap();
    for (a, wj) in flagged_amplitudes(&uc.circuit).iter().zip(&w.weights) {
        assert!((a * (n * uc.weight_scale).sqrt() - wj.sqrt().conj()).norm() < 1e-12);
    }
}

#[test]
fn zero_weight_gets_zero_amplitude() {
    let w = compute_weights(&cfg(2, 5.0)).unwrap();
    assert_eq!(w.weights[0], Complex64::new(0.0, 0.0));
    let u = build_u_sqrt_w(&w).unwrap();
    assert!(flagged_amplitudes(&u.circuit)[0].norm() < 1e-16);
}

#[test]
fn exact_grover_angle() {
    // one r_k qubit plus a flag; equal weights give p0 = 1/2, so build p0 = 1/4 by hand
    let layout = Arc::new(RegisterLayout::new(&[("r_k", 2), (A_BE_W, 1)]).unwrap());
    let mut cb = lchs_core::sim::CircuitBuilder::new(layout, "uniform");
    cb.push(lchs_core::sim::StmcGate::h(0));
    cb.push(lchs_core::sim::StmcGate::h(1));
    cb.push(lchs_core::sim::StmcGate::ry(std::f64::consts::PI / 3.0 * 2.0, 2));
    let raw = (0.25f64).sqrt();
    let u = lchs_core::weights::PreparedWeights {
        circuit: cb.build().unwrap(),
        success_amplitude: raw,
        raw_amplitude: raw,
        n_aa: 0,
        weight_scale: 1.0,
    };
    let wrapped = wrap_amplitude_amplification(&u, 1, "a_aa").unwrap();
    let s = apply(&wrapped.circuit, StateVector::zero(wrapped.circuit.layout_arc().clone())).unwrap();
    let mut probe = s.clone();
    let p = probe.project_zero(&[2, 3]).unwrap();
    assert!((p - 1.0).abs() < 1e-12, "p = {p}");
}

#[test]
fn amplified_probability_matches_formula() {
    let w = compute_weights(&cfg(6, 10.0)).unwrap();
    let u = build_u_sqrt_w(&w).unwrap();
    let p0 = u.p0();
    let n = aa_rounds(p0).unwrap();
    let wrapped = wrap_amplitude_amplification(&u, n, "a_aa0").unwrap();
    let mut s = apply(&wrapped.circuit, StateVector::zero(wrapped.circuit.layout_arc().clone())).unwrap();
    let flag = s.layout().qubit(A_BE_W, 0).unwrap();
    let aa = s.layout().qubit("a_aa0", 0).unwrap();
    let p = s.project_zero(&[flag, aa]).unwrap();
    let want = amplified_amplitude(p0, n).powi(2);
    assert!((p - want).abs() < 1e-10, "p = {p}, want = {want}");
    assert!(p >= p0);
    // the flagged branch is still proportional to √w
    let amps = s.register_amplitudes("r_k").unwrap();
    let ratio = amps[5] / w.weights[5].sqrt();
    for j in 1..w.len() - 1 {
        assert!((amps[j] - ratio * w.weights[j].sqrt()).norm() < 1e-11);
    }
}

#[test]
fn paper_round_anchor() {
    // p0 = 1/N_k after the Σ|w| rescaling; quoted values are 30 and 43
    let n11 = aa_rounds(1.0 / 2048.0).unwrap();
    let n12 = aa_rounds(1.0 / 4096.0).unwrap();
    assert!((n11 as f64 - 30.0).abs() <= 9.0, "{n11}");
    assert!((n12 as f64 - 43.0).abs() <= 12.9, "{n12}");
}

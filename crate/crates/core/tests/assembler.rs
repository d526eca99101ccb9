use lchs_core::assembler::{
    build_lchs_circuit, effective_operator, run, state_prep_gates, CircuitOptions, InitMode, WeightPrep,
};
use lchs_core::lchs::{compute_weights, AaRounds, HermitianSplit, Kernel, LchsConfig};
use lchs_core::linalg::{build_ade_matrix, expm, gaussian_initial_state, l2_distance, AdeParams, DenseComplexMatrix};
use lchs_core::sim::{Circuit, RegisterLayout, StateVector};
use lchs_core::Complex64;
use std::sync::Arc;

fn cfg(n_k: u32, t: f64) -> LchsConfig {
    LchsConfig {
        kernel: Kernel::Improved,
        beta: 0.7,
        k_max: 10.0,
        n_k,
        t,
        eps_qsp: 1e-8,
        aa_rounds: AaRounds::Auto,
    }
}

fn discrete_operator(c: &LchsConfig, p: &AdeParams) -> DenseComplexMatrix {
    let split = HermitianSplit::new(&build_ade_matrix(p).unwrap()).unwrap();
    let w = compute_weights(c).unwrap();
    let mut acc = DenseComplexMatrix::zeros(p.n_points());
    for (wj, s) in w.weights.iter().zip(w.sin_thetas()) {
        let v = expm(&split.generator(c.k_max, s).scale(Complex64::new(0.0, -c.t))).unwrap();
        acc = &acc + &v.scale(*wj);
    }
    acc
}

#[test]
fn whole_circuit_block_is_the_weighted_sum() {
    let p = AdeParams::new(2, 1.0, 0.01).unwrap();
    let c = cfg(2, 0.4);
    let lc = build_lchs_circuit(&c, &p, CircuitOptions::default(), None).unwrap();
    assert_eq!(lc.n_qubits(), 14);
    let got = effective_operator(&lc).unwrap();
    let want = discrete_operator(&c, &p);
    let err = got.max_abs_diff(&want).unwrap();
    assert!(err < 1e-7, "err = {err:e}");
}

#[test]
fn zero_time_returns_weight_sum_times_input() {
    let p = AdeParams::new(3, 1.0, 0.01).unwrap();
    let c = cfg(3, 0.0);
    let psi0 = gaussian_initial_state(3, 0.5, 0.2).unwrap();
    let r = run(&c, &p, &psi0, CircuitOptions::default()).unwrap();
    let s = r.weight_sum;
    let want: Vec<Complex64> = psi0.iter().map(|z| z * s).collect();
    assert!(l2_distance(&r.psi_out, &want) < 1e-10);
    assert!(r.err_vs_expm.l2 <= (s - 1.0).norm() + 1e-10);
}

#[test]
fn end_to_end_matches_discrete_sum() {
    let p = AdeParams::new(4, 1.0, 0.01).unwrap();
    let c = cfg(6, 0.4);
    let psi0 = gaussian_initial_state(4, 0.5, 0.1).unwrap();
    let r = run(&c, &p, &psi0, CircuitOptions::default()).unwrap();
    assert!(r.err_vs_discrete_sum.l2 <= 1e-6, "{:e}", r.err_vs_discrete_sum.l2);
    assert!((r.success_probability - r.predicted_success_probability).abs() < 1e-9);
    assert!(r.success_probability > r.raw_success_probability);
}

#[test]
fn circuit_initialization_matches_injection() {
    let p = AdeParams::new(3, 1.0, 0.01).unwrap();
    let c = cfg(2, 0.2);
    let psi0 = gaussian_initial_state(3, 0.3, 0.2).unwrap();
    let a = run(&c, &p, &psi0, CircuitOptions::default()).unwrap();
    let b = run(&c, &p, &psi0, CircuitOptions { init: InitMode::Circuit, ..Default::default() }).unwrap();
    assert!(l2_distance(&a.psi_out, &b.psi_out) < 1e-12);
    assert!(b.counts.init.total() > 0);
}

#[test]
fn state_prep_is_exact_for_complex_vectors() {
    let psi: Vec<Complex64> = (0..8)
        .map(|i| Complex64::from_polar(1.0 + (i as f64 * 0.7).sin(), i as f64 * 1.3 - 2.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)).take(0))
        .collect();
    let n = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut psi: Vec<Complex64> = psi.iter().map(|z| z / n).collect();
    psi[5] = Complex64::new(0.0, 0.0);
    let n = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|z| *z /= n);
    let layout = Arc::new(RegisterLayout::new(&[("r", 3)]).unwrap());
    let c = Circuit::from_gates(layout.clone(), state_prep_gates(&psi, &[0, 1, 2]).unwrap(), "prep").unwrap();
    let mut s = StateVector::zero(layout);
    s.apply(&c).unwrap();
    assert!(l2_distance(s.amplitudes(), &psi) < 1e-12);
}

#[test]
fn success_probability_tracks_decay() {
    let p = AdeParams::new(3, 1.0, 0.05).unwrap();
    let psi0 = gaussian_initial_state(3, 0.5, 0.2).unwrap();
    let probs: Vec<(f64, f64)> = [0.2, 0.8]
        .iter()
        .map(|&t| {
            let r = run(&cfg(5, t), &p, &psi0, CircuitOptions::default()).unwrap();
            (r.success_probability, r.exact_norm)
        })
        .collect();
    assert!(probs[1].0 < probs[0].0);
    assert!(probs[1].1 < probs[0].1);
}

#[test]
fn exact_weight_oracles_give_the_same_state() {
    let p = AdeParams::new(3, 1.0, 0.01).unwrap();
    let c = cfg(4, 0.4);
    let psi0 = gaussian_initial_state(3, 0.5, 0.1).unwrap();
    let exact = CircuitOptions {
        weights: WeightPrep::Exact,
        ..Default::default()
    };
    let a = run(&c, &p, &psi0, CircuitOptions::default()).unwrap();
    let b = run(&c, &p, &psi0, exact).unwrap();
    assert_eq!(b.n_qubits + 3, a.n_qubits);
    assert!(l2_distance(&a.psi_out, &b.psi_out) < 1e-8);
    assert!(b.err_vs_discrete_sum.l2 < 1e-8);
    assert!((b.success_probability - b.predicted_success_probability).abs() < 1e-9);
}

#[test]
fn exact_oracle_block_at_small_size() {
    let p = AdeParams::new(2, 1.0, 0.01).unwrap();
    let c = cfg(3, 0.2);
    let opts = CircuitOptions {
        weights: WeightPrep::Exact,
        ..Default::default()
    };
    let lc = build_lchs_circuit(&c, &p, opts, None).unwrap();
    let err = effective_operator(&lc).unwrap().max_abs_diff(&discrete_operator(&c, &p)).unwrap();
    assert!(err < 1e-7, "err = {err:e}");
}

use std::sync::Arc;

use lchs_core::linalg::DenseComplexMatrix;
use lchs_core::sim::{
    apply, circuit_to_matrix, extract_block, Circuit, Control, GateKind, RegisterLayout, StateVector, StmcGate,
};
use lchs_core::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// Full-space matrix of one gate, built entry by entry.
fn dense_gate(g: &StmcGate, n: usize) -> DenseComplexMatrix {
    let u = g.kind.matrix();
    DenseComplexMatrix::from_fn(1 << n, |r, c| {
        let active = g.controls.iter().all(|k| ((c >> k.qubit) & 1 == 1) == k.on_one);
        let rest = !(1usize << g.target);
        if !active {
            return if r == c { Complex64::new(1.0, 0.0) } else { C0 };
        }
        if r & rest != c & rest {
            return C0;
        }
        u[(r >> g.target) & 1][(c >> g.target) & 1]
    })
}

fn dense_circuit(c: &Circuit) -> DenseComplexMatrix {
    let n = c.layout().width();
    let mut m = DenseComplexMatrix::identity(1 << n);
    for g in c.gates() {
        m = dense_gate(g, n).matmul(&m).unwrap();
    }
    m
}

fn arb_gate(n: usize) -> impl Strategy<Value = StmcGate> {
    (0..5u8, -6.0..6.0f64, 0..n, proptest::collection::vec((0..n, any::<bool>()), 0..3)).prop_map(
        move |(k, a, target, ctl)| {
            let kind = match k {
                0 => GateKind::X,
                1 => GateKind::H,
                2 => GateKind::Ry(a),
                3 => GateKind::Rz(a),
                _ => GateKind::Phase(a),
            };
            let mut controls: Vec<Control> = Vec::new();
            for (q, on_one) in ctl {
                if q != target && controls.iter().all(|c| c.qubit != q) {
                    controls.push(Control { qubit: q, on_one });
                }
            }
            StmcGate::new(kind, target).with_controls(controls)
        },
    )
}

fn arb_circuit(max_n: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(arb_gate(n), 0..max_gates).prop_map(move |gates| {
            let layout = Arc::new(RegisterLayout::new(&[("q", n)]).unwrap());
            Circuit::from_gates(layout, gates, "random").unwrap()
        })
    })
}

#[test]
fn single_gates() {
    let layout = Arc::new(RegisterLayout::new(&[("q", 1)]).unwrap());
    let x = Circuit::from_gates(layout.clone(), vec![StmcGate::x(0)], "x").unwrap();
    let s = apply(&x, StateVector::zero(layout.clone())).unwrap();
    assert_eq!(s.amplitudes()[1], Complex64::new(1.0, 0.0));
    let hh = Circuit::from_gates(layout.clone(), vec![StmcGate::h(0), StmcGate::h(0)], "hh").unwrap();
    let s = apply(&hh, StateVector::zero(layout.clone())).unwrap();
    assert!((s.amplitudes()[0] - 1.0).norm() < 1e-15);
    let th = 0.9;
    let ry = Circuit::from_gates(layout.clone(), vec![StmcGate::ry(th, 0)], "ry").unwrap();
    let m = circuit_to_matrix(&ry).unwrap();
    let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
    let want = DenseComplexMatrix::from_rows(&[
        vec![Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        vec![Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ])
    .unwrap();
    assert!(m.max_abs_diff(&want).unwrap() < 1e-15);
    let empty = Circuit::empty(layout, "empty");
    assert!(circuit_to_matrix(&empty).unwrap().max_abs_diff(&DenseComplexMatrix::identity(2)).unwrap() == 0.0);
}

#[test]
fn negative_control_cnot() {
    let layout = Arc::new(RegisterLayout::new(&[("t", 1), ("c", 1)]).unwrap());
    let c = Circuit::from_gates(layout, vec![StmcGate::x(0).ctrl0(1)], "cx0").unwrap();
    let m = circuit_to_matrix(&c).unwrap();
    // index = t + 2c; X on t when c = 0
    let one = Complex64::new(1.0, 0.0);
    let want = DenseComplexMatrix::from_fn(4, |r, k| match (r, k) {
        (1, 0) | (0, 1) | (2, 2) | (3, 3) => one,
        _ => C0,
    });
    assert_eq!(m, want);
}

#[test]
fn extract_block_fixes_unlisted_qubits_to_zero() {
    let layout = Arc::new(RegisterLayout::new(&[("s", 1), ("a", 1)]).unwrap());
    let c = Circuit::from_gates(layout, vec![StmcGate::ry(1.0, 1).ctrl(0)], "c").unwrap();
    let b = extract_block(&c, &[0], &[]).unwrap();
    assert!((b[(0, 0)] - 1.0).norm() < 1e-15);
    assert!((b[(1, 1)].re - 0.5f64.cos()).abs() < 1e-15);
}

#[test]
fn random_fifty_gate_circuit_matches_dense_product() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let c = proptest::collection::vec(arb_gate(3), 50)
        .new_tree(&mut runner)
        .unwrap()
        .current();
    let layout = Arc::new(RegisterLayout::new(&[("q", 3)]).unwrap());
    let c = Circuit::from_gates(layout, c, "r50").unwrap();
    assert!(circuit_to_matrix(&c).unwrap().max_abs_diff(&dense_circuit(&c)).unwrap() < 1e-13);
}

#[test]
fn norm_is_kept_over_ten_thousand_gates() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let gates = proptest::collection::vec(arb_gate(8), 10_000)
        .new_tree(&mut runner)
        .unwrap()
        .current();
    let layout = Arc::new(RegisterLayout::new(&[("q", 8)]).unwrap());
    let c = Circuit::from_gates(layout.clone(), gates, "long").unwrap();
    let s = apply(&c, StateVector::basis(layout, 37)).unwrap();
    assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_dense_oracle(c in arb_circuit(5, 40)) {
        let m = circuit_to_matrix(&c).unwrap();
        prop_assert!(m.max_abs_diff(&dense_circuit(&c)).unwrap() < 1e-12);
        prop_assert!(m.unitarity_defect() < 1e-12);
    }

    #[test]
    fn adjoint_inverts(c in arb_circuit(6, 60), idx in 0usize..64) {
        let layout = c.layout_arc().clone();
        let start = StateVector::basis(layout.clone(), idx % layout.dim());
        let s = apply(&c.then(&c.adjoint()).unwrap(), start.clone()).unwrap();
        let diff: f64 = s.amplitudes().iter().zip(start.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-12);
    }

    #[test]
    fn text_round_trip(c in arb_circuit(4, 20)) {
        let back = Circuit::from_text(&c.to_text()).unwrap();
        prop_assert_eq!(back.len(), c.len());
        prop_assert!(circuit_to_matrix(&back).unwrap().max_abs_diff(&circuit_to_matrix(&c).unwrap()).unwrap() < 1e-15);
    }
}

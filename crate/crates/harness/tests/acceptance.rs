//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use lchs_core::assembler::{run, CircuitOptions, WeightPrep};
use lchs_core::block_encoding::build_u_c;
use lchs_core::lchs::{classical_lchs_apply, compute_weights, suggest_nk, theta_grid, Kernel, LchsConfig};
use lchs_core::linalg::{
    build_ade_matrix, expm, gaussian_initial_state, hermitian_split, l2_distance, spectral_norm, AdeParams,
};
use lchs_core::qsp::build_selector;
use lchs_core::sim::{
    apply, circuit_to_matrix, Circuit, CircuitBuilder, Control, GateKind, RegisterLayout, StateVector, StmcGate,
};
use lchs_core::weights::{aa_rounds, build_u_sqrt_w, wrap_amplitude_amplification, PreparedWeights, A_BE_W};
use lchs_core::Complex64;
use lchs_harness::config::{RunConfig, ScanKind};
use lchs_harness::fits::{pearson, spread};
use lchs_harness::records::{CircuitRow, ClassicalRow};
use lchs_harness::report::{
    best_beta, check_kmax_law, gates_vs_time, kmax_law, nk_increments, queries_vs_time, special_spread, BETA_RANGE,
    DECAY_PEARSON_MIN, NK_SUCCESS_SPREAD_MAX, SPECIAL_SPREAD_MAX, TIME_R2_MIN,
};
use lchs_harness::scans::{circuit_scan, classical_scan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn classical_cfg(kernel: Kernel, scan: ScanKind, grid: &[f64]) -> RunConfig {
    let mut c = RunConfig::default();
    c.lchs.kernel = kernel;
    c.lchs.beta = 0.7;
    c.lchs.t = 0.8;
    c.problem = AdeParams::new(6, 1.0, 0.01).unwrap();
    c.target_dk = Some(0.04);
    c.scan = scan;
    c.grid = grid.to_vec();
    c
}

fn c1_kernel_law() -> Outcome {
    let rows = classical_scan(
        &classical_cfg(Kernel::Improved, ScanKind::KMax, &[10.0, 15.0, 20.0, 30.0, 40.0]),
        None,
    )
    .unwrap();
    match kmax_law(&rows, 0.7) {
        Some(f) => outcome(
            check_kmax_law(&f),
            format!("a = {:.4} (want within 3x of 0.119), b = {:.4} (want [0.35, 0.65])", f.a, f.b),
        ),
        None => outcome(false, "fit failed"),
    }
}

fn c2_special_law() -> Outcome {
    let rows = classical_scan(&classical_cfg(Kernel::Special, ScanKind::KMax, &[10.0, 20.0, 40.0, 80.0]), None).unwrap();
    let s = special_spread(&rows);
    outcome(s < SPECIAL_SPREAD_MAX, format!("max/min of eps·k_max = {s:.3}"))
}

fn c3_beta_optimum() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for k_max in [20.0, 30.0] {
        let mut c = classical_cfg(Kernel::Improved, ScanKind::Beta, &[0.5, 0.6, 0.7, 0.75, 0.8, 0.9]);
        c.lchs.k_max = k_max;
        let rows: Vec<ClassicalRow> = classical_scan(&c, None).unwrap();
        let b = best_beta(&rows).unwrap_or(f64::NAN);
        pass &= (BETA_RANGE.0..=BETA_RANGE.1).contains(&b);
        detail.push(format!("k_max = {k_max}: argmin beta = {b}"));
    }
    outcome(pass, detail.join("; "))
}

fn c4_selector_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n_x in [2, 3] {
        let a = build_ade_matrix(&AdeParams::new(n_x, 1.0, 0.01).unwrap()).unwrap();
        let (l, h) = hermitian_split(&a).unwrap();
        for n_k in [2, 3, 4] {
            let u_c = build_u_c(&l, &h, n_x, n_k, 10.0).unwrap();
            let grid = theta_grid(n_k, 10.0).unwrap();
            for t in [0.2, 0.4] {
                let sel = build_selector(&u_c, t, 1e-8).unwrap();
                for (j, th) in grid.thetas.iter().enumerate() {
                    let c = &h + &l.scale_real(10.0 * th.sin());
                    let want = expm(&c.scale(Complex64::new(0.0, -t))).unwrap();
                    let got = sel.block(j).unwrap();
                    worst = worst.max(spectral_norm(&(&got - &want)));
                    count += 1;
                }
            }
        }
    }
    outcome(worst <= 1e-7, format!("{count} blocks, max spectral-norm error {worst:.3e} (want ≤ 1e-7)"))
}

fn c5_end_to_end() -> Outcome {
    let p = AdeParams::new(4, 1.0, 0.01).unwrap();
    let cfg = LchsConfig {
        kernel: Kernel::Improved,
        beta: 0.7,
        k_max: 10.0,
        n_k: 6,
        t: 0.4,
        ..LchsConfig::default()
    };
    let psi0 = gaussian_initial_state(4, 0.5, 0.05).unwrap();
    let exact_opts = CircuitOptions {
        weights: WeightPrep::Exact,
        ..Default::default()
    };
    let r = run(&cfg, &p, &psi0, exact_opts).unwrap();
    let ladder = run(&cfg, &p, &psi0, CircuitOptions::default()).unwrap();
    outcome(
        r.err_vs_discrete_sum.l2 <= 1e-6 && r.n_qubits <= 17,
        format!(
            "exact weight oracles: {} qubits, l2 error {:.3e}; ladder + AA oracles: {} qubits, l2 error {:.3e}",
            r.n_qubits, r.err_vs_discrete_sum.l2, ladder.n_qubits, ladder.err_vs_discrete_sum.l2
        ),
    )
}

fn circuit_base(scan: ScanKind, grid: &[f64]) -> RunConfig {
    let mut c = RunConfig::default();
    c.problem = AdeParams::new(4, 1.0, 0.01).unwrap();
    c.lchs.k_max = 10.0;
    c.lchs.n_k = 6;
    c.lchs.t = 0.4;
    c.scan = scan;
    c.grid = grid.to_vec();
    c
}

const TIMES: [f64; 5] = [0.2, 0.4, 0.8, 1.2, 1.6];
const NKS: [f64; 5] = [4.0, 5.0, 6.0, 7.0, 8.0];

fn c6_linear_in_time() -> Outcome {
    let rows = circuit_scan(&circuit_base(ScanKind::Time, &TIMES), None, true).unwrap();
    let g = gates_vs_time(&rows).unwrap();
    let q = queries_vs_time(&rows).unwrap();
    outcome(
        g.r2 > TIME_R2_MIN && g.slope > 0.0 && q.r2 > TIME_R2_MIN && q.slope > 0.0,
        format!(
            "N_gates vs t: R² = {:.5}, slope {:.1}; U_C queries vs alpha_C·t + ln(1/eps): R² = {:.5}, slope {:.3}",
            g.r2, g.slope, q.r2, q.slope
        ),
    )
}

fn c7_log_in_nk() -> Outcome {
    let rows = circuit_scan(&circuit_base(ScanKind::Nk, &NKS), None, true).unwrap();
    let (inc, growth) = nk_increments(&rows);
    outcome(
        growth <= 1.0,
        format!("selector gate increments per n_k step {inc:?}, growth relative to n_k = {growth:.3}"),
    )
}

fn c8_success_probability() -> Outcome {
    let by_nk: Vec<CircuitRow> = circuit_scan(&circuit_base(ScanKind::Nk, &NKS), None, false).unwrap();
    let s_nk = spread(&by_nk.iter().map(|r| r.success_probability).collect::<Vec<_>>());
    let by_t: Vec<CircuitRow> = circuit_scan(&circuit_base(ScanKind::Time, &TIMES), None, false).unwrap();
    let p: Vec<f64> = by_t.iter().map(|r| r.success_probability).collect();
    let n2: Vec<f64> = by_t.iter().map(|r| r.exact_norm * r.exact_norm).collect();
    let dec = p.windows(2).all(|w| w[1] < w[0]);
    let r = pearson(&p, &n2).unwrap_or(f64::NAN);
    outcome(
        s_nk < NK_SUCCESS_SPREAD_MAX && dec && r > DECAY_PEARSON_MIN,
        format!("spread over n_k = {s_nk:.3}; decreasing in t = {dec}; Pearson vs ‖ψ(t)‖² = {r:.4}"),
    )
}

fn c9_aa_rounds() -> Outcome {
    let layout = Arc::new(RegisterLayout::new(&[("r_k", 2), (A_BE_W, 1)]).unwrap());
    let mut cb = CircuitBuilder::new(layout, "p0 = 1/4");
    cb.push(StmcGate::h(0));
    cb.push(StmcGate::h(1));
    cb.push(StmcGate::ry(2.0 * std::f64::consts::FRAC_PI_3, 2));
    let u = PreparedWeights {
        circuit: cb.build().unwrap(),
        success_amplitude: 0.5,
        raw_amplitude: 0.5,
        n_aa: 0,
        weight_scale: 1.0,
    };
    let n = aa_rounds(0.25).unwrap();
    let w = wrap_amplitude_amplification(&u, n, "a_aa").unwrap();
    let mut s = apply(&w.circuit, StateVector::zero(w.circuit.layout_arc().clone())).unwrap();
    let p = s.project_zero(&[2, 3]).unwrap();

    let cfg = LchsConfig {
        k_max: 40.0,
        n_k: 11,
        ..LchsConfig::default()
    };
    let n11 = aa_rounds(build_u_sqrt_w(&compute_weights(&cfg).unwrap()).unwrap().p0()).unwrap();
    let rel = (n11 as f64 - 30.0).abs() / 30.0;
    outcome(
        n == 1 && (p - 1.0).abs() <= 1e-12 && rel <= 0.3,
        format!("p0 = 1/4: N_AA = {n}, probability {p:.15}; k_max = 40, n_k = 11: N_AA = {n11} vs 30 ({:.0}%)", rel * 100.0),
    )
}

fn c10_weight_sum() -> Outcome {
    let p = AdeParams::new(6, 1.0, 0.01).unwrap();
    let a = build_ade_matrix(&p).unwrap();
    let (a_l, _) = hermitian_split(&a).unwrap();
    let psi0 = gaussian_initial_state(6, 0.5, 0.05).unwrap();
    let mut pass = true;
    let mut detail = Vec::new();
    for k_max in [20.0, 40.0] {
        let mut cfg = LchsConfig {
            kernel: Kernel::Improved,
            beta: 0.7,
            k_max,
            t: 0.8,
            ..LchsConfig::default()
        };
        cfg.n_k = suggest_nk(&cfg, spectral_norm(&a_l), 1e-2).unwrap();
        let miss = (compute_weights(&cfg).unwrap().sum() - 1.0).norm();
        cfg.t = 0.0;
        let eps = l2_distance(&classical_lchs_apply(&a, &psi0, &cfg).unwrap(), &psi0);
        pass &= miss <= eps * (1.0 + 1e-9) + 1e-15;
        detail.push(format!("k_max = {k_max}, n_k = {}: |Σw - 1| = {miss:.3e}, eps_LCHS = {eps:.3e}", cfg.n_k));
    }
    outcome(pass, detail.join("; "))
}

fn random_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.gen_range(1..=10);
    let layout = Arc::new(RegisterLayout::new(&[("q", n)]).unwrap());
    let gates = (0..rng.gen_range(0..=30))
        .map(|_| {
            let target = rng.gen_range(0..n);
            let a = rng.gen_range(-6.0..6.0);
            let kind = match rng.gen_range(0..5) {
                0 => GateKind::X,
                1 => GateKind::H,
                2 => GateKind::Ry(a),
                3 => GateKind::Rz(a),
                _ => GateKind::Phase(a),
            };
            let mut g = StmcGate::new(kind, target);
            for q in 0..n {
                if q != target && rng.gen_bool(0.25) {
                    g = g.with_controls([Control { qubit: q, on_one: rng.gen_bool(0.5) }]);
                }
            }
            g
        })
        .collect();
    Circuit::from_gates(layout, gates, "random").unwrap()
}

fn random_state(rng: &mut ChaCha8Rng, layout: Arc<RegisterLayout>) -> StateVector {
    let amps: Vec<Complex64> = (0..layout.dim())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let n = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(layout, amps.into_iter().map(|z| z / n).collect()).unwrap()
}

fn c11_engine_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut unit, mut adj, mut equiv): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let c = random_circuit(&mut rng);
        let layout = c.layout_arc().clone();
        let s = random_state(&mut rng, layout.clone());
        let out = apply(&c, s.clone()).unwrap();
        unit = unit.max((out.norm_sqr() - 1.0).abs());
        let back = apply(&c.adjoint(), out.clone()).unwrap();
        adj = adj.max(l2_distance(back.amplitudes(), s.amplitudes()));
        let m = circuit_to_matrix(&c).unwrap();
        equiv = equiv.max(l2_distance(&m.matvec(s.amplitudes()).unwrap(), out.amplitudes()));
        if layout.width() <= 6 {
            unit = unit.max(m.unitarity_defect());
        }
    }
    outcome(
        unit < 1e-12 && adj < 1e-12 && equiv < 1e-12,
        format!("1000 circuits: unitarity {unit:.2e}, adjoint inverse {adj:.2e}, matrix equivalence {equiv:.2e}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("1 kernel error law", c1_kernel_law, 60),
        ("2 special-kernel law", c2_special_law, 60),
        ("3 beta optimum", c3_beta_optimum, 120),
        ("4 selector oracle equivalence", c4_selector_equivalence, 300),
        ("5 end-to-end circuit vs discrete sum", c5_end_to_end, 600),
        ("6 linear-in-time gate count", c6_linear_in_time, u64::MAX),
        ("7 logarithmic-in-N_k gate count", c7_log_in_nk, u64::MAX),
        ("8 success probability behavior", c8_success_probability, u64::MAX),
        ("9 AA round formula", c9_aa_rounds, u64::MAX),
        ("10 weight-sum identity", c10_weight_sum, u64::MAX),
        ("11 engine property suite", c11_engine_properties, 120),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = if limit == u64::MAX { String::new() } else { format!(" (limit {limit} s)") };
        println!(
            "{} criterion {name}: {} [{:.1} s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

use lchs_core::lchs::{
    classical_lchs_apply, compute_weights, kernel_improved, kernel_special, theta_grid, AaRounds, Kernel, LchsConfig,
};
use lchs_core::linalg::{
    build_ade_matrix, expm, gaussian_initial_state, hermitian_split, l2_distance, AdeParams,
};
use lchs_core::Complex64;

fn cfg(kernel: Kernel, k_max: f64, n_k: u32, t: f64) -> LchsConfig {
    LchsConfig {
        kernel,
        beta: 0.7,
        k_max,
        n_k,
        t,
        eps_qsp: 1e-8,
        aa_rounds: AaRounds::Auto,
    }
}

/// `∫_{|k| > k_max} ξ(k)/(1 - ik) dk` by Simpson's rule.
fn kernel_tail(k_max: f64, beta: f64) -> f64 {
    let f = |k: f64| (kernel_improved(k, beta).unwrap() / Complex64::new(1.0, -k)).re;
    let (b, n) = (2000.0, 400_000);
    let h = (b - k_max) / n as f64;
    let mut s = f(k_max) + f(b);
    for i in 1..n {
        s += f(k_max + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    2.0 * s * h / 3.0
}

#[test]
fn improved_weights_miss_only_the_kernel_tail() {
    for k_max in [20.0, 40.0] {
        let w = compute_weights(&cfg(Kernel::Improved, k_max, 12, 0.8)).unwrap();
        let miss = 1.0 - w.sum();
        let tail = kernel_tail(k_max, 0.7);
        assert!(miss.im.abs() < 1e-14);
        assert!((miss.re - tail).abs() < 0.05 * tail, "k_max = {k_max}: {} vs {tail}", miss.re);
    }
}

#[test]
fn special_kernel_weights_are_symmetric() {
    let w = compute_weights(&cfg(Kernel::Special, 10.0, 5, 0.4)).unwrap();
    let n = w.len();
    for j in 0..n {
        assert!((w.weights[j] - w.weights[n - 1 - j].conj()).norm() < 1e-15);
    }
    assert!((kernel_special(0.0).re - 1.0 / std::f64::consts::PI).abs() < 1e-16);
}

#[test]
fn kernel_is_hermitian_in_k() {
    for k in [0.3, 2.0, 7.5] {
        let a = kernel_improved(k, 0.7).unwrap() / Complex64::new(1.0, -k);
        let b = kernel_improved(-k, 0.7).unwrap() / Complex64::new(1.0, k);
        assert!((a - b.conj()).norm() < 1e-15);
    }
}

#[test]
fn grid_is_mirror_symmetric() {
    let g = theta_grid(4, 10.0).unwrap();
    let n = g.thetas.len();
    for j in 0..n {
        assert_eq!(g.thetas[j], -g.thetas[n - 1 - j]);
    }
}

#[test]
fn hermitian_split_of_ade() {
    let a = build_ade_matrix(&AdeParams::new(3, 1.0, 0.01).unwrap()).unwrap();
    let (l, h) = hermitian_split(&a).unwrap();
    assert!(l.is_hermitian(0.0) && h.is_hermitian(0.0));
    let back = &l + &h.scale(Complex64::new(0.0, 1.0));
    assert!(back.max_abs_diff(&a).unwrap() < 1e-14);
}

#[test]
fn classical_sum_approaches_exact_solution() {
    let p = AdeParams::new(4, 1.0, 0.01).unwrap();
    let a = build_ade_matrix(&p).unwrap();
    let psi0 = gaussian_initial_state(4, 0.5, 0.1).unwrap();
    let exact = expm(&a.scale_real(-0.4)).unwrap().matvec(&psi0).unwrap();
    let coarse = classical_lchs_apply(&a, &psi0, &cfg(Kernel::Improved, 10.0, 8, 0.4)).unwrap();
    let fine = classical_lchs_apply(&a, &psi0, &cfg(Kernel::Improved, 30.0, 11, 0.4)).unwrap();
    let (e1, e2) = (l2_distance(&coarse, &exact), l2_distance(&fine, &exact));
    assert!(e2 < e1 && e2 < 1e-3, "{e1:e} {e2:e}");
}

#[test]
fn zero_time_sum_is_weight_sum() {
    let a = build_ade_matrix(&AdeParams::new(2, 1.0, 0.01).unwrap()).unwrap();
    let psi0 = gaussian_initial_state(2, 0.5, 0.3).unwrap();
    let c = cfg(Kernel::Improved, 10.0, 6, 0.0);
    let s = compute_weights(&c).unwrap().sum();
    let out = classical_lchs_apply(&a, &psi0, &c).unwrap();
    let want: Vec<Complex64> = psi0.iter().map(|z| z * s).collect();
    assert!(l2_distance(&out, &want) < 1e-15);
}

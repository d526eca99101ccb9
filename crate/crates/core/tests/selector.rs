use lchs_core::block_encoding::build_u_c;
use lchs_core::lchs::theta_grid;
use lchs_core::linalg::{build_ade_matrix, expm, hermitian_split, AdeParams, DenseComplexMatrix};
use lchs_core::qsp::build_selector;
use lchs_core::Complex64;

fn generators(n_x: u32, n_k: u32, k_max: f64) -> (Vec<DenseComplexMatrix>, lchs_core::block_encoding::BlockEncoding) {
    let a = build_ade_matrix(&AdeParams::new(n_x, 1.0, 0.01).unwrap()).unwrap();
    let (l, h) = hermitian_split(&a).unwrap();
    let g = theta_grid(n_k, k_max).unwrap();
    let cs = g.thetas.iter().map(|th| &h + &l.scale_real(k_max * th.sin())).collect();
    (cs, build_u_c(&l, &h, n_x, n_k, k_max).unwrap())
}

#[test]
fn selector_blocks_match_exponentials() {
    let (cs, u_c) = generators(2, 2, 10.0);
    let t = 0.4;
    let sel = build_selector(&u_c, t, 1e-8).unwrap();
    for (j, c) in cs.iter().enumerate() {
        let want = expm(&c.scale(Complex64::new(0.0, -t))).unwrap();
        let got = sel.block(j).unwrap();
        let err = got.max_abs_diff(&want).unwrap();
        assert!(err < 1e-7, "j = {j}, err = {err:e}");
    }
}

#[test]
fn zero_time_is_identity() {
    let (_, u_c) = generators(2, 2, 10.0);
    let sel = build_selector(&u_c, 0.0, 1e-8).unwrap();
    for j in 0..4 {
        let b = sel.block(j).unwrap();
        assert!(b.max_abs_diff(&DenseComplexMatrix::identity(4)).unwrap() < 1e-12);
    }
}

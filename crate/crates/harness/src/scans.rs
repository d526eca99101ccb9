//! Scan execution. Points run concurrently; results come back in grid order.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use lchs_core::assembler::{build_lchs_circuit_with, run_with, exact_solution};
use lchs_core::lchs::{compute_weights, ClassicalTerms};
use lchs_core::linalg::{build_ade_matrix, gaussian_initial_state, l2_distance, l2_norm, linf_distance};
use lchs_core::qsp::{DirectSolver, PhaseProvider};
use lchs_core::Complex64;
use rayon::prelude::*;

use crate::cache::PhaseCache;
use crate::config::RunConfig;
use crate::error::{HarnessError, Result};
use crate::records::{kernel_name, CircuitRow, ClassicalRow};

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(HarnessError::Usage("--workers must be at least 1".into()));
        }
        b = b.num_threads(w);
    }
    b.build().map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))
}

pub fn initial_state(cfg: &RunConfig) -> Result<Vec<Complex64>> {
    Ok(gaussian_initial_state(cfg.problem.n_x, cfg.x0, cfg.width)?)
}

type TermKey = (u32, u64, u32, u64, u64, u64, u64, u64);

fn term_key(c: &RunConfig) -> TermKey {
    (
        c.problem.n_x,
        c.lchs.k_max.to_bits(),
        c.lchs.n_k,
        c.lchs.t.to_bits(),
        c.problem.v.to_bits(),
        c.problem.d.to_bits(),
        c.x0.to_bits(),
        c.width.to_bits(),
    )
}

/// Classical error of the discretized sum at every scan point. Points sharing
/// `(k_max, n_k, t, problem)` share one set of exponentials.
pub fn classical_scan(cfg: &RunConfig, workers: Option<usize>) -> Result<Vec<ClassicalRow>> {
    let points = cfg.points();
    let pool = pool(workers)?;
    let mut keys: Vec<TermKey> = Vec::new();
    let mut reps: Vec<&RunConfig> = Vec::new();
    for p in &points {
        let k = term_key(p);
        if !keys.contains(&k) {
            keys.push(k);
            reps.push(p);
        }
    }
    type Terms = (ClassicalTerms, Vec<Complex64>, Vec<Complex64>);
    let computed: Vec<Terms> = pool.install(|| {
        reps.par_iter()
            .map(|p| -> Result<Terms> {
                let a = build_ade_matrix(&p.problem)?;
                let psi0 = initial_state(p)?;
                let exact = exact_solution(&p.problem, p.lchs.t, &psi0)?;
                let terms = ClassicalTerms::compute(&a, &psi0, p.lchs.k_max, p.lchs.n_k, p.lchs.t)?;
                Ok((terms, psi0, exact))
            })
            .collect::<Result<_>>()
    })?;
    let table: HashMap<TermKey, Arc<Terms>> = keys.into_iter().zip(computed.into_iter().map(Arc::new)).collect();
    points
        .iter()
        .map(|p| {
            let (terms, _, exact) = &*table[&term_key(p)];
            let w = compute_weights(&p.lchs)?;
            let approx = terms.combine(&w)?;
            let s = w.sum();
            Ok(ClassicalRow {
                kernel: kernel_name(p.lchs.kernel).into(),
                beta: p.lchs.beta,
                k_max: p.lchs.k_max,
                n_k: p.lchs.n_k,
                delta_k: p.lchs.delta_k(),
                n_x: p.problem.n_x,
                v: p.problem.v,
                d: p.problem.d,
                t: p.lchs.t,
                eps_l2: l2_distance(&approx, exact),
                eps_linf: linf_distance(&approx, exact),
                exact_norm: l2_norm(exact),
                weight_sum_re: s.re,
                weight_sum_im: s.im,
            })
        })
        .collect()
}

fn provider(cache: Option<&Path>) -> Result<Box<dyn PhaseProvider>> {
    Ok(match cache {
        Some(dir) => Box::new(PhaseCache::new(dir).map_err(|e| HarnessError::io(dir, e))?),
        None => Box::new(DirectSolver),
    })
}

/// One circuit row per scan point; with `count_only` nothing is simulated.
pub fn circuit_scan(cfg: &RunConfig, workers: Option<usize>, count_only: bool) -> Result<Vec<CircuitRow>> {
    let points = cfg.points();
    for p in &points {
        p.check_qubit_budget().map_err(HarnessError::Usage)?;
    }
    let pool = pool(workers)?;
    let cache = cfg.phase_cache.clone();
    pool.install(|| {
        points
            .par_iter()
            .map(|p| -> Result<CircuitRow> {
                let mut prov = provider(cache.as_deref())?;
                let psi0 = initial_state(p)?;
                if count_only {
                    let lc = build_lchs_circuit_with(&p.lchs, &p.problem, p.options(), Some(&psi0), prov.as_mut())?;
                    Ok(CircuitRow::from_circuit(p, &lc))
                } else {
                    let res = run_with(&p.lchs, &p.problem, &psi0, p.options(), prov.as_mut())?;
                    Ok(CircuitRow::from_run(p, &res))
                }
            })
            .collect()
    })
}

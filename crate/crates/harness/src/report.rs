//! Summaries, fits and threshold checks over result tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{HarnessError, Result};
use crate::fits::{argmin, fit_exp_law, linear_fit, pearson, spread, ExpLawFit, LinearFit};
use crate::records::{fmt_f64, read_table, CircuitRow, ClassicalRow, Row, Table};

/// Reference law `ε ≈ 0.119·exp(-0.5·k_max^0.7)` and its accepted band.
pub const LAW_A: f64 = 0.119;
pub const LAW_A_FACTOR: f64 = 3.0;
pub const LAW_B_RANGE: (f64, f64) = (0.35, 0.65);
pub const SPECIAL_SPREAD_MAX: f64 = 5.0;
pub const BETA_RANGE: (f64, f64) = (0.7, 0.8);
pub const TIME_R2_MIN: f64 = 0.99;
pub const NK_SUCCESS_SPREAD_MAX: f64 = 2.0;
pub const DECAY_PEARSON_MIN: f64 = 0.95;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub text: String,
    pub checks: Vec<Check>,
    /// Plot data: file stem and `(x, y)` pairs.
    pub series: Vec<(String, Vec<(f64, f64)>)>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn write_series(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        for (stem, pts) in &self.series {
            let mut s = String::new();
            for (x, y) in pts {
                let _ = writeln!(s, "{} {}", fmt_f64(*x), fmt_f64(*y));
            }
            let p = dir.join(format!("{stem}.dat"));
            std::fs::write(&p, s).map_err(|e| HarnessError::io(&p, e))?;
        }
        Ok(())
    }
}

fn key(parts: &[String]) -> String {
    parts.join(",")
}

fn sorted_by<T>(rows: &mut [T], f: impl Fn(&T) -> f64) {
    rows.sort_by(|a, b| f(a).total_cmp(&f(b)));
}

/// Exponential-law fit of `eps_l2` against `k_max`.
pub fn kmax_law(rows: &[ClassicalRow], beta: f64) -> Option<ExpLawFit> {
    let k: Vec<f64> = rows.iter().map(|r| r.k_max).collect();
    let e: Vec<f64> = rows.iter().map(|r| r.eps_l2).collect();
    fit_exp_law(&k, &e, beta)
}

pub fn check_kmax_law(fit: &ExpLawFit) -> bool {
    (LAW_B_RANGE.0..=LAW_B_RANGE.1).contains(&fit.b) && fit.a <= LAW_A * LAW_A_FACTOR && fit.a >= LAW_A / LAW_A_FACTOR
}

/// `max/min` of `ε·k_max`.
pub fn special_spread(rows: &[ClassicalRow]) -> f64 {
    spread(&rows.iter().map(|r| r.eps_l2 * r.k_max).collect::<Vec<_>>())
}

pub fn best_beta(rows: &[ClassicalRow]) -> Option<f64> {
    let b: Vec<f64> = rows.iter().map(|r| r.beta).collect();
    let e: Vec<f64> = rows.iter().map(|r| r.eps_l2).collect();
    argmin(&b, &e)
}

pub fn gates_vs_time(rows: &[CircuitRow]) -> Option<LinearFit> {
    let t: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let g: Vec<f64> = rows.iter().map(|r| r.gates_total as f64).collect();
    linear_fit(&t, &g)
}

pub fn queries_vs_time(rows: &[CircuitRow]) -> Option<LinearFit> {
    let x: Vec<f64> = rows.iter().map(|r| r.tau + (1.0 / r.eps_qsp).ln()).collect();
    let q: Vec<f64> = rows.iter().map(|r| r.n_queries as f64).collect();
    linear_fit(&x, &q)
}

/// Successive selector gate increments per `n_k` step, and their growth
/// `max/min` divided by the growth of `n_k` over the same range. At most one
/// means the increments grow no faster than linearly in `n_k`.
pub fn nk_increments(rows: &[CircuitRow]) -> (Vec<f64>, f64) {
    let inc: Vec<f64> = rows
        .windows(2)
        .map(|w| w[1].gates_selector as f64 - w[0].gates_selector as f64)
        .collect();
    if inc.is_empty() || inc.iter().any(|d| *d <= 0.0) {
        return (inc, f64::INFINITY);
    }
    let n_growth = rows[rows.len() - 1].n_k as f64 / rows[1].n_k as f64;
    let growth = spread(&inc) / n_growth;
    (inc, growth)
}

pub fn decay_correlation(rows: &[CircuitRow]) -> Option<f64> {
    let p: Vec<f64> = rows.iter().map(|r| r.success_probability).collect();
    let n: Vec<f64> = rows.iter().map(|r| r.exact_norm * r.exact_norm).collect();
    pearson(&p, &n)
}

fn classical_report(rows: &[ClassicalRow], rep: &mut Report) {
    let mut by_law: BTreeMap<String, Vec<ClassicalRow>> = BTreeMap::new();
    let mut by_beta: BTreeMap<String, Vec<ClassicalRow>> = BTreeMap::new();
    for r in rows {
        let common = [r.n_x.to_string(), fmt_f64(r.t), fmt_f64(r.v), fmt_f64(r.d)];
        let mut k1 = vec![r.kernel.clone(), fmt_f64(r.beta)];
        k1.extend(common.iter().cloned());
        by_law.entry(key(&k1)).or_default().push(r.clone());
        if r.kernel == "improved" {
            let mut k2 = vec![fmt_f64(r.k_max)];
            k2.extend(common.iter().cloned());
            by_beta.entry(key(&k2)).or_default().push(r.clone());
        }
    }
    for mut g in by_law.into_values() {
        sorted_by(&mut g, |r| r.k_max);
        g.dedup_by(|a, b| a.k_max == b.k_max);
        if g.len() < 3 {
            continue;
        }
        let head = &g[0];
        let stem = format!("classical_kmax_{}_beta{:.2}_t{}", head.kernel, head.beta, head.t);
        rep.series.push((stem, g.iter().map(|r| (r.k_max, r.eps_l2)).collect()));
        if head.kernel == "improved" {
            if let Some(f) = kmax_law(&g, head.beta) {
                let _ = writeln!(
                    rep.text,
                    "improved kernel, beta = {}: eps = {:.4}·exp(-{:.4}·k_max^beta), R² = {:.4}",
                    head.beta, f.a, f.b, f.r2
                );
                if (head.beta - 0.7).abs() < 1e-12 {
                    rep.checks.push(Check::new(
                        "k_max law",
                        check_kmax_law(&f),
                        format!("a = {:.4}, b = {:.4}", f.a, f.b),
                    ));
                }
            }
        } else {
            let s = special_spread(&g);
            let _ = writeln!(rep.text, "special kernel: max/min of eps·k_max = {s:.3}");
            rep.checks.push(Check::new("special kernel 1/k_max", s < SPECIAL_SPREAD_MAX, format!("spread {s:.3}")));
        }
    }
    for mut g in by_beta.into_values() {
        sorted_by(&mut g, |r| r.beta);
        g.dedup_by(|a, b| a.beta == b.beta);
        if g.len() < 2 {
            continue;
        }
        let k_max = g[0].k_max;
        rep.series.push((format!("classical_beta_kmax{k_max}"), g.iter().map(|r| (r.beta, r.eps_l2)).collect()));
        if let Some(b) = best_beta(&g) {
            let _ = writeln!(rep.text, "k_max = {k_max}: best beta = {b}");
            rep.checks.push(Check::new(
                format!("beta optimum at k_max = {k_max}"),
                (BETA_RANGE.0..=BETA_RANGE.1).contains(&b),
                format!("argmin beta = {b}"),
            ));
        }
    }
}

fn circuit_report(rows: &[CircuitRow], rep: &mut Report) {
    let mut by_t: BTreeMap<String, Vec<CircuitRow>> = BTreeMap::new();
    let mut by_nk: BTreeMap<String, Vec<CircuitRow>> = BTreeMap::new();
    for r in rows {
        let common = [
            r.kernel.clone(),
            fmt_f64(r.beta),
            fmt_f64(r.k_max),
            r.n_x.to_string(),
            fmt_f64(r.eps_qsp),
            r.weights.clone(),
        ];
        let mut k1 = vec![r.n_k.to_string()];
        k1.extend(common.iter().cloned());
        by_t.entry(key(&k1)).or_default().push(r.clone());
        let mut k2 = vec![fmt_f64(r.t)];
        k2.extend(common.iter().cloned());
        by_nk.entry(key(&k2)).or_default().push(r.clone());
    }
    for mut g in by_t.into_values() {
        sorted_by(&mut g, |r| r.t);
        g.dedup_by(|a, b| a.t == b.t);
        if g.len() < 2 {
            continue;
        }
        let n_k = g[0].n_k;
        rep.series.push((format!("circuit_gates_vs_t_nk{n_k}"), g.iter().map(|r| (r.t, r.gates_total as f64)).collect()));
        if let Some(f) = gates_vs_time(&g) {
            let _ = writeln!(rep.text, "n_k = {n_k}: N_gates = {:.1}·t + {:.1}, R² = {:.5}", f.slope, f.intercept, f.r2);
            rep.checks.push(Check::new(
                format!("gates linear in t (n_k = {n_k})"),
                f.r2 > TIME_R2_MIN && f.slope > 0.0,
                format!("R² = {:.5}, slope = {:.1}", f.r2, f.slope),
            ));
        }
        if g.iter().all(|r| r.success_probability.is_finite()) {
            rep.series.push((
                format!("circuit_success_vs_t_nk{n_k}"),
                g.iter().map(|r| (r.t, r.success_probability)).collect(),
            ));
            if let Some(c) = decay_correlation(&g) {
                let dec = g.windows(2).all(|w| w[1].success_probability < w[0].success_probability);
                let _ = writeln!(rep.text, "n_k = {n_k}: corr(success, ‖ψ(t)‖²) = {c:.4}");
                rep.checks.push(Check::new(
                    format!("success tracks decay (n_k = {n_k})"),
                    dec && c > DECAY_PEARSON_MIN,
                    format!("decreasing = {dec}, r = {c:.4}"),
                ));
            }
        }
    }
    for mut g in by_nk.into_values() {
        sorted_by(&mut g, |r| r.n_k as f64);
        g.dedup_by(|a, b| a.n_k == b.n_k);
        if g.len() < 3 {
            continue;
        }
        let t = g[0].t;
        rep.series.push((
            format!("circuit_gates_vs_nk_t{t}"),
            g.iter().map(|r| (r.n_k as f64, r.gates_selector as f64)).collect(),
        ));
        let (inc, ratio) = nk_increments(&g);
        let _ = writeln!(rep.text, "t = {t}: selector gate increments per n_k step {inc:?}");
        rep.checks.push(Check::new(
            format!("gates logarithmic in N_k (t = {t})"),
            ratio <= 1.0,
            format!("increment growth relative to n_k growth = {ratio:.3}"),
        ));
        if g.iter().all(|r| r.success_probability.is_finite()) {
            let s = spread(&g.iter().map(|r| r.success_probability).collect::<Vec<_>>());
            rep.checks.push(Check::new(
                format!("success flat in n_k (t = {t})"),
                s < NK_SUCCESS_SPREAD_MAX,
                format!("spread {s:.3}"),
            ));
        }
    }
}

fn echo<R: Row>(rows: &[R], rep: &mut Report) {
    let _ = writeln!(rep.text, "{}", R::HEADER.join(","));
    for r in rows {
        let _ = writeln!(rep.text, "{}", r.fields().join(","));
    }
}

pub fn build_report(tables: &[Table]) -> Report {
    let mut rep = Report::default();
    let mut classical = Vec::new();
    let mut circuit = Vec::new();
    for t in tables {
        match t {
            Table::Classical(r) => classical.extend(r.iter().cloned()),
            Table::Circuit(r) => circuit.extend(r.iter().cloned()),
        }
    }
    if classical.len() + circuit.len() == 1 {
        if classical.is_empty() {
            echo(&circuit, &mut rep);
        } else {
            echo(&classical, &mut rep);
        }
        return rep;
    }
    classical_report(&classical, &mut rep);
    circuit_report(&circuit, &mut rep);
    if rep.text.is_empty() && rep.checks.is_empty() {
        rep.text.push_str("no groups with enough points to fit\n");
    }
    rep
}

pub fn cmd_report(paths: &[impl AsRef<Path>]) -> Result<Report> {
    if paths.is_empty() {
        return Err(HarnessError::Usage("report needs at least one CSV file".into()));
    }
    let tables = paths.iter().map(|p| read_table(p.as_ref())).collect::<Result<Vec<_>>>()?;
    Ok(build_report(&tables))
}

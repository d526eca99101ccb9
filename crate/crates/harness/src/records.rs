//! CSV rows. Every file starts with a `schema_version` column; floats are
//! written with 17 significant digits so identical runs give identical bytes.

use std::io::Write;
use std::path::Path;

use csv::StringRecord;
use lchs_core::assembler::{ComponentCounts, LchsCircuit, LchsRunResult};
use lchs_core::lchs::Kernel;

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn kernel_name(k: Kernel) -> &'static str {
    match k {
        Kernel::Improved => "improved",
        Kernel::Special => "special",
    }
}

pub trait Row: Sized {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
    fn from_fields(get: &dyn Fn(&str) -> std::result::Result<String, String>) -> std::result::Result<Self, String>;
}

/// One classical evaluation of the discretized sum against `exp(-At)ψ0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalRow {
    pub kernel: String,
    pub beta: f64,
    pub k_max: f64,
    pub n_k: u32,
    pub delta_k: f64,
    pub n_x: u32,
    pub v: f64,
    pub d: f64,
    pub t: f64,
    pub eps_l2: f64,
    pub eps_linf: f64,
    pub exact_norm: f64,
    pub weight_sum_re: f64,
    pub weight_sum_im: f64,
}

fn num(get: &dyn Fn(&str) -> std::result::Result<String, String>, k: &str) -> std::result::Result<f64, String> {
    let s = get(k)?;
    s.parse().map_err(|_| format!("column {k}: `{s}` is not a number"))
}

fn int(get: &dyn Fn(&str) -> std::result::Result<String, String>, k: &str) -> std::result::Result<u64, String> {
    let s = get(k)?;
    s.parse().map_err(|_| format!("column {k}: `{s}` is not an integer"))
}

impl Row for ClassicalRow {
    const HEADER: &'static [&'static str] = &[
        "schema_version",
        "kernel",
        "beta",
        "k_max",
        "n_k",
        "delta_k",
        "n_x",
        "v",
        "D",
        "t",
        "eps_l2",
        "eps_linf",
        "exact_norm",
        "weight_sum_re",
        "weight_sum_im",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            SCHEMA_VERSION.to_string(),
            self.kernel.clone(),
            fmt_f64(self.beta),
            fmt_f64(self.k_max),
            self.n_k.to_string(),
            fmt_f64(self.delta_k),
            self.n_x.to_string(),
            fmt_f64(self.v),
            fmt_f64(self.d),
            fmt_f64(self.t),
            fmt_f64(self.eps_l2),
            fmt_f64(self.eps_linf),
            fmt_f64(self.exact_norm),
            fmt_f64(self.weight_sum_re),
            fmt_f64(self.weight_sum_im),
        ]
    }

    fn from_fields(g: &dyn Fn(&str) -> std::result::Result<String, String>) -> std::result::Result<Self, String> {
        Ok(Self {
            kernel: g("kernel")?,
            beta: num(g, "beta")?,
            k_max: num(g, "k_max")?,
            n_k: int(g, "n_k")? as u32,
            delta_k: num(g, "delta_k")?,
            n_x: int(g, "n_x")? as u32,
            v: num(g, "v")?,
            d: num(g, "D")?,
            t: num(g, "t")?,
            eps_l2: num(g, "eps_l2")?,
            eps_linf: num(g, "eps_linf")?,
            exact_norm: num(g, "exact_norm")?,
            weight_sum_re: num(g, "weight_sum_re")?,
            weight_sum_im: num(g, "weight_sum_im")?,
        })
    }
}

/// One circuit run or gate count. Simulation columns are `NaN` in count-only mode.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitRow {
    pub kernel: String,
    pub beta: f64,
    pub k_max: f64,
    pub n_k: u32,
    pub n_x: u32,
    pub v: f64,
    pub d: f64,
    pub t: f64,
    pub eps_qsp: f64,
    pub init_mode: String,
    pub weights: String,
    pub n_qubits: u32,
    pub alpha_c: f64,
    pub tau: f64,
    pub n_queries: u64,
    pub n_aa: u32,
    pub gates_total: u64,
    pub gates_init: u64,
    pub gates_weights: u64,
    pub gates_selector: u64,
    pub success_probability: f64,
    pub predicted_success_probability: f64,
    pub raw_success_probability: f64,
    pub exact_norm: f64,
    pub err_expm_l2: f64,
    pub err_expm_linf: f64,
    pub err_expm_norm_l2: f64,
    pub err_expm_norm_linf: f64,
    pub err_sum_l2: f64,
    pub err_sum_linf: f64,
    pub err_sum_norm_l2: f64,
    pub err_sum_norm_linf: f64,
}

impl CircuitRow {
    fn base(cfg: &RunConfig, counts: &ComponentCounts) -> Self {
        let l = &cfg.lchs;
        let nan = f64::NAN;
        Self {
            kernel: kernel_name(l.kernel).into(),
            beta: l.beta,
            k_max: l.k_max,
            n_k: l.n_k,
            n_x: cfg.problem.n_x,
            v: cfg.problem.v,
            d: cfg.problem.d,
            t: l.t,
            eps_qsp: l.eps_qsp,
            init_mode: match cfg.init_mode {
                lchs_core::assembler::InitMode::Inject => "inject".into(),
                lchs_core::assembler::InitMode::Circuit => "circuit".into(),
            },
            weights: match cfg.weights {
                lchs_core::assembler::WeightPrep::Ladder => "ladder".into(),
                lchs_core::assembler::WeightPrep::Exact => "exact".into(),
            },
            n_qubits: 0,
            alpha_c: nan,
            tau: nan,
            n_queries: 0,
            n_aa: 0,
            gates_total: counts.total().total() as u64,
            gates_init: counts.init.total() as u64,
            gates_weights: (counts.weights_left.total() + counts.weights_right.total()) as u64,
            gates_selector: counts.selector.total() as u64,
            success_probability: nan,
            predicted_success_probability: nan,
            raw_success_probability: nan,
            exact_norm: nan,
            err_expm_l2: nan,
            err_expm_linf: nan,
            err_expm_norm_l2: nan,
            err_expm_norm_linf: nan,
            err_sum_l2: nan,
            err_sum_linf: nan,
            err_sum_norm_l2: nan,
            err_sum_norm_linf: nan,
        }
    }

    pub fn from_circuit(cfg: &RunConfig, lc: &LchsCircuit) -> Self {
        let mut r = Self::base(cfg, &lc.counts);
        r.n_qubits = lc.n_qubits() as u32;
        r.alpha_c = lc.selector.alpha;
        r.tau = lc.selector.tau;
        r.n_queries = lc.selector.n_queries as u64;
        r.n_aa = lc.left.n_aa;
        r
    }

    pub fn from_run(cfg: &RunConfig, res: &LchsRunResult) -> Self {
        let mut r = Self::base(cfg, &res.counts);
        r.n_qubits = res.n_qubits as u32;
        r.alpha_c = res.alpha_c;
        r.tau = res.tau;
        r.n_queries = res.n_queries as u64;
        r.n_aa = res.n_aa;
        r.success_probability = res.success_probability;
        r.predicted_success_probability = res.predicted_success_probability;
        r.raw_success_probability = res.raw_success_probability;
        r.exact_norm = res.exact_norm;
        r.err_expm_l2 = res.err_vs_expm.l2;
        r.err_expm_linf = res.err_vs_expm.linf;
        r.err_expm_norm_l2 = res.err_vs_expm_normalized.l2;
        r.err_expm_norm_linf = res.err_vs_expm_normalized.linf;
        r.err_sum_l2 = res.err_vs_discrete_sum.l2;
        r.err_sum_linf = res.err_vs_discrete_sum.linf;
        r.err_sum_norm_l2 = res.err_vs_discrete_sum_normalized.l2;
        r.err_sum_norm_linf = res.err_vs_discrete_sum_normalized.linf;
        r
    }
}

impl Row for CircuitRow {
    const HEADER: &'static [&'static str] = &[
        "schema_version",
        "kernel",
        "beta",
        "k_max",
        "n_k",
        "n_x",
        "v",
        "D",
        "t",
        "eps_qsp",
        "init_mode",
        "weights",
        "n_qubits",
        "alpha_c",
        "tau",
        "n_queries",
        "n_aa",
        "gates_total",
        "gates_init",
        "gates_weights",
        "gates_selector",
        "success_probability",
        "predicted_success_probability",
        "raw_success_probability",
        "exact_norm",
        "err_expm_l2",
        "err_expm_linf",
        "err_expm_norm_l2",
        "err_expm_norm_linf",
        "err_sum_l2",
        "err_sum_linf",
        "err_sum_norm_l2",
        "err_sum_norm_linf",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            SCHEMA_VERSION.to_string(),
            self.kernel.clone(),
            fmt_f64(self.beta),
            fmt_f64(self.k_max),
            self.n_k.to_string(),
            self.n_x.to_string(),
            fmt_f64(self.v),
            fmt_f64(self.d),
            fmt_f64(self.t),
            fmt_f64(self.eps_qsp),
            self.init_mode.clone(),
            self.weights.clone(),
            self.n_qubits.to_string(),
            fmt_f64(self.alpha_c),
            fmt_f64(self.tau),
            self.n_queries.to_string(),
            self.n_aa.to_string(),
            self.gates_total.to_string(),
            self.gates_init.to_string(),
            self.gates_weights.to_string(),
            self.gates_selector.to_string(),
            fmt_f64(self.success_probability),
            fmt_f64(self.predicted_success_probability),
            fmt_f64(self.raw_success_probability),
            fmt_f64(self.exact_norm),
            fmt_f64(self.err_expm_l2),
            fmt_f64(self.err_expm_linf),
            fmt_f64(self.err_expm_norm_l2),
            fmt_f64(self.err_expm_norm_linf),
            fmt_f64(self.err_sum_l2),
            fmt_f64(self.err_sum_linf),
            fmt_f64(self.err_sum_norm_l2),
            fmt_f64(self.err_sum_norm_linf),
        ]
    }

    fn from_fields(g: &dyn Fn(&str) -> std::result::Result<String, String>) -> std::result::Result<Self, String> {
        Ok(Self {
            kernel: g("kernel")?,
            beta: num(g, "beta")?,
            k_max: num(g, "k_max")?,
            n_k: int(g, "n_k")? as u32,
            n_x: int(g, "n_x")? as u32,
            v: num(g, "v")?,
            d: num(g, "D")?,
            t: num(g, "t")?,
            eps_qsp: num(g, "eps_qsp")?,
            init_mode: g("init_mode")?,
            weights: g("weights")?,
            n_qubits: int(g, "n_qubits")? as u32,
            alpha_c: num(g, "alpha_c")?,
            tau: num(g, "tau")?,
            n_queries: int(g, "n_queries")?,
            n_aa: int(g, "n_aa")? as u32,
            gates_total: int(g, "gates_total")?,
            gates_init: int(g, "gates_init")?,
            gates_weights: int(g, "gates_weights")?,
            gates_selector: int(g, "gates_selector")?,
            success_probability: num(g, "success_probability")?,
            predicted_success_probability: num(g, "predicted_success_probability")?,
            raw_success_probability: num(g, "raw_success_probability")?,
            exact_norm: num(g, "exact_norm")?,
            err_expm_l2: num(g, "err_expm_l2")?,
            err_expm_linf: num(g, "err_expm_linf")?,
            err_expm_norm_l2: num(g, "err_expm_norm_l2")?,
            err_expm_norm_linf: num(g, "err_expm_norm_linf")?,
            err_sum_l2: num(g, "err_sum_l2")?,
            err_sum_linf: num(g, "err_sum_linf")?,
            err_sum_norm_l2: num(g, "err_sum_norm_l2")?,
            err_sum_norm_linf: num(g, "err_sum_norm_linf")?,
        })
    }
}

pub fn write_rows<R: Row, W: Write>(out: W, rows: &[R]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn rows_to_string<R: Row>(rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_rows(&mut buf, rows).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn write_file<R: Row>(path: &Path, rows: &[R]) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    write_rows(std::io::BufWriter::new(f), rows).map_err(|source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// A parsed results file.
#[derive(Clone, Debug, PartialEq)]
pub enum Table {
    Classical(Vec<ClassicalRow>),
    Circuit(Vec<CircuitRow>),
}

fn parse_rows<R: Row>(headers: &StringRecord, records: &[StringRecord]) -> std::result::Result<Vec<R>, String> {
    records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let get = |k: &str| -> std::result::Result<String, String> {
                let idx = headers
                    .iter()
                    .position(|h| h == k)
                    .ok_or_else(|| format!("missing column {k}"))?;
                rec.get(idx)
                    .map(str::to_string)
                    .ok_or_else(|| format!("row {}: missing field {k}", i + 2))
            };
            R::from_fields(&get).map_err(|e| format!("row {}: {e}", i + 2))
        })
        .collect()
}

pub fn read_table(path: &Path) -> Result<Table> {
    let malformed = |reason: String| HarnessError::Malformed {
        path: path.to_path_buf(),
        reason,
    };
    let mut rdr = csv::Reader::from_path(path).map_err(|source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    let headers = rdr
        .headers()
        .map_err(|source| HarnessError::Csv {
            path: path.to_path_buf(),
            source,
        })?
        .clone();
    if headers.get(0) != Some("schema_version") {
        return Err(malformed("first column must be schema_version".into()));
    }
    let records: Vec<StringRecord> = rdr
        .records()
        .collect::<csv::Result<_>>()
        .map_err(|source| HarnessError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
    for (i, r) in records.iter().enumerate() {
        if r.get(0) != Some(&SCHEMA_VERSION.to_string()) {
            return Err(malformed(format!("row {}: unsupported schema version", i + 2)));
        }
    }
    if headers.iter().any(|h| h == "eps_l2") {
        parse_rows(&headers, &records).map(Table::Classical).map_err(malformed)
    } else if headers.iter().any(|h| h == "gates_total") {
        parse_rows(&headers, &records).map(Table::Circuit).map_err(malformed)
    } else {
        Err(malformed("neither a classical nor a circuit table".into()))
    }
}

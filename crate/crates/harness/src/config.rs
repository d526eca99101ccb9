//! Flat `key = value` run configuration.

use std::path::{Path, PathBuf};

use lchs_core::assembler::{CircuitOptions, InitMode, WeightPrep};
use lchs_core::lchs::{AaRounds, Kernel, LchsConfig};
use lchs_core::linalg::AdeParams;
use lchs_core::sim::MAX_QUBITS;

use crate::error::{HarnessError, Result};

/// The parameter a scan varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanKind {
    KMax,
    Beta,
    Nk,
    Time,
    ClassicalOnly,
}

impl ScanKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "kmax" | "k_max" => ScanKind::KMax,
            "beta" => ScanKind::Beta,
            "nk" | "n_k" => ScanKind::Nk,
            "time" | "t" => ScanKind::Time,
            "classical_only" | "none" => ScanKind::ClassicalOnly,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScanKind::KMax => "kmax",
            ScanKind::Beta => "beta",
            ScanKind::Nk => "nk",
            ScanKind::Time => "time",
            ScanKind::ClassicalOnly => "classical_only",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub lchs: LchsConfig,
    pub problem: AdeParams,
    pub init_mode: InitMode,
    pub weights: WeightPrep,
    /// Gaussian initial state.
    pub x0: f64,
    pub width: f64,
    /// Choose `n_k` per point so that `k_max Δθ` does not exceed this.
    pub target_dk: Option<f64>,
    pub scan: ScanKind,
    pub grid: Vec<f64>,
    pub out: Option<PathBuf>,
    pub phase_cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            lchs: LchsConfig::default(),
            problem: AdeParams { n_x: 4, v: 1.0, d: 0.01 },
            init_mode: InitMode::Inject,
            weights: WeightPrep::Ladder,
            x0: 0.5,
            width: 0.05,
            target_dk: None,
            scan: ScanKind::ClassicalOnly,
            grid: Vec::new(),
            out: None,
            phase_cache: None,
        }
    }
}

fn parse_f64(v: &str) -> std::result::Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("`{v}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{v}` is not finite"))
    }
}

fn parse_u32(v: &str) -> std::result::Result<u32, String> {
    v.parse().map_err(|_| format!("`{v}` is not a non-negative integer"))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let err = |reason: String| HarnessError::Config {
                path: origin.to_path_buf(),
                line: i + 1,
                reason,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            cfg.set(k.trim(), v.trim()).map_err(err)?;
        }
        cfg.validate().map_err(|reason| HarnessError::Config {
            path: origin.to_path_buf(),
            line: 0,
            reason,
        })?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, v: &str) -> std::result::Result<(), String> {
        match key {
            "kernel" => {
                self.lchs.kernel = match v {
                    "improved" => Kernel::Improved,
                    "special" => Kernel::Special,
                    _ => return Err(format!("kernel must be `improved` or `special`, got `{v}`")),
                }
            }
            "beta" => self.lchs.beta = parse_f64(v)?,
            "k_max" => self.lchs.k_max = parse_f64(v)?,
            "n_k" => self.lchs.n_k = parse_u32(v)?,
            "n_x" => self.problem.n_x = parse_u32(v)?,
            "v" => self.problem.v = parse_f64(v)?,
            "D" | "d" => self.problem.d = parse_f64(v)?,
            "t" => self.lchs.t = parse_f64(v)?,
            "eps_qsp" => self.lchs.eps_qsp = parse_f64(v)?,
            "aa" => {
                self.lchs.aa_rounds = if v == "auto" {
                    AaRounds::Auto
                } else {
                    AaRounds::Fixed(parse_u32(v).map_err(|_| format!("aa must be `auto` or a round count, got `{v}`"))?)
                }
            }
            "init_mode" => {
                self.init_mode = match v {
                    "inject" => InitMode::Inject,
                    "circuit" => InitMode::Circuit,
                    _ => return Err(format!("init_mode must be `inject` or `circuit`, got `{v}`")),
                }
            }
            "weights" => {
                self.weights = match v {
                    "ladder" => WeightPrep::Ladder,
                    "exact" => WeightPrep::Exact,
                    _ => return Err(format!("weights must be `ladder` or `exact`, got `{v}`")),
                }
            }
            "x0" => self.x0 = parse_f64(v)?,
            "width" => self.width = parse_f64(v)?,
            "dk" => self.target_dk = Some(parse_f64(v)?),
            "scan" => self.scan = ScanKind::parse(v).ok_or_else(|| format!("unknown scan kind `{v}`"))?,
            "grid" => {
                self.grid = v
                    .split(',')
                    .map(|s| parse_f64(s.trim()))
                    .collect::<std::result::Result<_, _>>()?
            }
            "out" => self.out = Some(PathBuf::from(v)),
            "phase_cache" => self.phase_cache = Some(PathBuf::from(v)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Rejects values the core would reject, with the offending key named.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let l = &self.lchs;
        if !(l.beta > 0.0 && l.beta < 1.0) {
            return Err(format!("beta = {} must lie in (0, 1)", l.beta));
        }
        if !(l.k_max > 0.0) {
            return Err(format!("k_max = {} must be positive", l.k_max));
        }
        if !(self.width > 0.0) {
            return Err(format!("width = {} must be positive", self.width));
        }
        if let Some(dk) = self.target_dk {
            if !(dk > 0.0) {
                return Err(format!("dk = {dk} must be positive"));
            }
        }
        if self.scan != ScanKind::ClassicalOnly && self.grid.is_empty() {
            return Err(format!("scan = {} needs a nonempty grid", self.scan.name()));
        }
        l.validate().map_err(|e| e.to_string())?;
        self.problem.validate().map_err(|e| e.to_string())?;
        Ok(())
    }

    /// Fails with an actionable message when the circuit would not fit the engine.
    pub fn check_qubit_budget(&self) -> std::result::Result<(), String> {
        let n = lchs_core::assembler::qubit_budget(self.problem.n_x, self.lchs.n_k, self.weights, false).total();
        if n > MAX_QUBITS {
            return Err(format!(
                "the circuit needs {n} qubits (n_x = {}, n_k = {}) but the engine supports {MAX_QUBITS}; lower n_x or n_k",
                self.problem.n_x, self.lchs.n_k
            ));
        }
        Ok(())
    }

    pub fn options(&self) -> CircuitOptions {
        CircuitOptions {
            init: self.init_mode,
            weights: self.weights,
        }
    }

    /// The configuration of one scan point.
    pub fn at(&self, value: f64) -> RunConfig {
        let mut c = self.clone();
        match self.scan {
            ScanKind::KMax => c.lchs.k_max = value,
            ScanKind::Beta => c.lchs.beta = value,
            ScanKind::Nk => c.lchs.n_k = value as u32,
            ScanKind::Time => c.lchs.t = value,
            ScanKind::ClassicalOnly => {}
        }
        c.scan = ScanKind::ClassicalOnly;
        c.grid.clear();
        if let (Some(dk), false) = (self.target_dk, self.scan == ScanKind::Nk) {
            c.lchs.n_k = n_k_for_dk(c.lchs.k_max, dk);
        }
        c
    }

    /// Every point of the scan, in grid order.
    pub fn points(&self) -> Vec<RunConfig> {
        if self.scan == ScanKind::ClassicalOnly {
            vec![self.at(f64::NAN)]
        } else {
            self.grid.iter().map(|&v| self.at(v)).collect()
        }
    }
}

/// Smallest `n_k` with `k_max · π / (2^n_k - 1) ≤ dk`.
pub fn n_k_for_dk(k_max: f64, dk: f64) -> u32 {
    let mut n_k = 1;
    while k_max * std::f64::consts::PI / (((1u64 << n_k) - 1) as f64) > dk && n_k < lchs_core::lchs::MAX_NK {
        n_k += 1;
    }
    n_k
}

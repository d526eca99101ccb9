use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    X,
    H,
    /// `exp(-i θ Y / 2)`
    Ry(f64),
    /// `diag(e^{-iθ/2}, e^{iθ/2})`
    Rz(f64),
    /// `diag(1, e^{iφ})`
    Phase(f64),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Ry(_) => "Ry",
            GateKind::Rz(_) => "Rz",
            GateKind::Phase(_) => "Phase",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::X | GateKind::H => None,
            GateKind::Ry(a) | GateKind::Rz(a) | GateKind::Phase(a) => Some(a),
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            GateKind::X => GateKind::X,
            GateKind::H => GateKind::H,
            GateKind::Ry(a) => GateKind::Ry(-a),
            GateKind::Rz(a) => GateKind::Rz(-a),
            GateKind::Phase(a) => GateKind::Phase(-a),
        }
    }

    /// The 2x2 matrix `[[m00, m01], [m10, m11]]`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match *self {
            GateKind::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            GateKind::H => {
                let h = core::f64::consts::FRAC_1_SQRT_2;
                [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]
            }
            GateKind::Ry(a) => {
                let (s, co) = (0.5 * a).sin_cos();
                [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
            }
            GateKind::Rz(a) => [
                [Complex64::from_polar(1.0, -0.5 * a), c(0.0, 0.0)],
                [c(0.0, 0.0), Complex64::from_polar(1.0, 0.5 * a)],
            ],
            GateKind::Phase(a) => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), Complex64::from_polar(1.0, a)]],
        }
    }
}

/// A control on `qubit`, active when it is `|1⟩` (`on_one`) or `|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub on_one: bool,
}

impl Control {
    pub fn one(qubit: usize) -> Self {
        Self { qubit, on_one: true }
    }

    pub fn zero(qubit: usize) -> Self {
        Self { qubit, on_one: false }
    }
}

/// Single-target multi-controlled gate.
#[derive(Clone, Debug, PartialEq)]
pub struct StmcGate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl StmcGate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Self {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn x(target: usize) -> Self {
        Self::new(GateKind::X, target)
    }

    pub fn h(target: usize) -> Self {
        Self::new(GateKind::H, target)
    }

    pub fn ry(angle: f64, target: usize) -> Self {
        Self::new(GateKind::Ry(angle), target)
    }

    pub fn rz(angle: f64, target: usize) -> Self {
        Self::new(GateKind::Rz(angle), target)
    }

    pub fn phase(angle: f64, target: usize) -> Self {
        Self::new(GateKind::Phase(angle), target)
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    pub fn ctrl(self, qubit: usize) -> Self {
        self.with_controls([Control::one(qubit)])
    }

    pub fn ctrl0(self, qubit: usize) -> Self {
        self.with_controls([Control::zero(qubit)])
    }

    pub fn inverse(&self) -> Self {
        Self {
            kind: self.kind.inverse(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    pub(crate) fn validate(&self, width: usize) -> Result<()> {
        if self.target >= width {
            return Err(Error::QubitOutOfRange {
                qubit: self.target,
                width,
            });
        }
        if let Some(a) = self.kind.angle() {
            if !a.is_finite() {
                return Err(Error::invalid("angle", "gate angles must be finite"));
            }
        }
        for (i, c) in self.controls.iter().enumerate() {
            if c.qubit >= width {
                return Err(Error::QubitOutOfRange { qubit: c.qubit, width });
            }
            if c.qubit == self.target {
                return Err(Error::TargetIsControl(c.qubit));
            }
            if self.controls[..i].iter().any(|d| d.qubit == c.qubit) {
                return Err(Error::invalid("controls", "a qubit appears twice among the controls"));
            }
        }
        Ok(())
    }

    /// `(mask, value)` of the control condition on the amplitude index.
    pub(crate) fn control_masks(&self) -> (usize, usize) {
        self.controls.iter().fold((0, 0), |(m, v), c| {
            let bit = 1usize << c.qubit;
            (m | bit, if c.on_one { v | bit } else { v })
        })
    }
}

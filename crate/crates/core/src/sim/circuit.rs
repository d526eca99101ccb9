use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign};

use super::gate::{Control, GateKind, StmcGate};
use super::layout::RegisterLayout;
use crate::{Error, Result};

/// Gate tallies by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub x: usize,
    pub h: usize,
    pub ry: usize,
    pub rz: usize,
    pub phase: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.x + self.h + self.ry + self.rz + self.phase
    }

    fn record(&mut self, kind: &GateKind) {
        match kind {
            GateKind::X => self.x += 1,
            GateKind::H => self.h += 1,
            GateKind::Ry(_) => self.ry += 1,
            GateKind::Rz(_) => self.rz += 1,
            GateKind::Phase(_) => self.phase += 1,
        }
    }
}

impl Add for GateCounts {
    type Output = GateCounts;
    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts {
            x: self.x + o.x,
            h: self.h + o.h,
            ry: self.ry + o.ry,
            rz: self.rz + o.rz,
            phase: self.phase + o.phase,
        }
    }
}

impl AddAssign for GateCounts {
    fn add_assign(&mut self, o: GateCounts) {
        *self = *self + o;
    }
}

/// Immutable gate sequence over a register layout.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    layout: Arc<RegisterLayout>,
    gates: Vec<StmcGate>,
    label: String,
}

impl Circuit {
    pub fn empty(layout: Arc<RegisterLayout>, label: &str) -> Self {
        Self {
            layout,
            gates: Vec::new(),
            label: label.to_string(),
        }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn layout_arc(&self) -> &Arc<RegisterLayout> {
        &self.layout
    }

    pub fn gates(&self) -> &[StmcGate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn count_stmc(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            c.record(&g.kind);
        }
        c
    }

    /// Reversed sequence of inverted gates.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            layout: self.layout.clone(),
            gates: self.gates.iter().rev().map(StmcGate::inverse).collect(),
            label: format!("{}^dag", self.label),
        }
    }

    /// `self` followed by `other` (same layout).
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch);
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            layout: self.layout.clone(),
            gates,
            label: self.label.clone(),
        })
    }

    /// Adds `controls` to every gate.
    pub fn controlled(&self, controls: &[Control]) -> Result<Circuit> {
        let gates = self
            .gates
            .iter()
            .map(|g| g.clone().with_controls(controls.iter().copied()))
            .collect();
        Circuit::from_gates(self.layout.clone(), gates, &self.label)
    }

    /// Re-targets the circuit onto `target`, matching registers by name.
    pub fn embed(&self, target: &Arc<RegisterLayout>) -> Result<Circuit> {
        if Arc::ptr_eq(&self.layout, target) || *self.layout == **target {
            return Ok(Circuit {
                layout: target.clone(),
                gates: self.gates.clone(),
                label: self.label.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.layout.width());
        for r in self.layout.registers() {
            let t = target
                .register(&r.name)
                .ok_or_else(|| Error::Layout(format!("target layout lacks register {}", r.name)))?;
            if t.width != r.width {
                return Err(Error::Layout(format!(
                    "register {} has width {} but {} in the target",
                    r.name, r.width, t.width
                )));
            }
            map.extend(t.qubits());
        }
        let gates = self
            .gates
            .iter()
            .map(|g| StmcGate {
                kind: g.kind,
                target: map[g.target],
                controls: g
                    .controls
                    .iter()
                    .map(|c| Control {
                        qubit: map[c.qubit],
                        on_one: c.on_one,
                    })
                    .collect(),
            })
            .collect();
        Ok(Circuit {
            layout: target.clone(),
            gates,
            label: self.label.clone(),
        })
    }

    pub fn from_gates(layout: Arc<RegisterLayout>, gates: Vec<StmcGate>, label: &str) -> Result<Circuit> {
        for g in &gates {
            g.validate(layout.width())?;
        }
        Ok(Circuit {
            layout,
            gates,
            label: label.to_string(),
        })
    }
}

/// Accumulates gates; validation happens once in [`CircuitBuilder::build`].
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    layout: Arc<RegisterLayout>,
    gates: Vec<StmcGate>,
    label: String,
}

impl CircuitBuilder {
    pub fn new(layout: Arc<RegisterLayout>, label: &str) -> Self {
        Self {
            layout,
            gates: Vec::new(),
            label: label.to_string(),
        }
    }

    pub fn layout(&self) -> &Arc<RegisterLayout> {
        &self.layout
    }

    pub fn push(&mut self, gate: StmcGate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = StmcGate>) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    /// Appends `c` after embedding it into this builder's layout.
    pub fn append(&mut self, c: &Circuit) -> Result<&mut Self> {
        let e = c.embed(&self.layout)?;
        self.gates.extend(e.gates);
        Ok(self)
    }

    /// Appends `c` with extra controls on every gate.
    pub fn append_controlled(&mut self, c: &Circuit, controls: &[Control]) -> Result<&mut Self> {
        let e = c.embed(&self.layout)?;
        self.gates
            .extend(e.gates.into_iter().map(|g| g.with_controls(controls.iter().copied())));
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn build(self) -> Result<Circuit> {
        Circuit::from_gates(self.layout, self.gates, &self.label)
    }
}

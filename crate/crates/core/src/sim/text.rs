//! Line-oriented circuit dump:
//!
//! ```text
//! circuit <label>
//! register <name> <width>
//! <kind> <angle|-> <target> [+q|-q ...]
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use super::circuit::Circuit;
use super::gate::{Control, GateKind, StmcGate};
use super::layout::RegisterLayout;
use crate::{Error, Result};

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "circuit {}", self.label());
        for r in self.layout().registers() {
            let _ = writeln!(s, "register {} {}", r.name, r.width);
        }
        for g in self.gates() {
            let _ = write!(s, "{} ", g.kind.name());
            match g.kind.angle() {
                // `{:e}` is the shortest representation that round-trips
                Some(a) => {
                    let _ = write!(s, "{a:e}");
                }
                None => s.push('-'),
            }
            let _ = write!(s, " {}", g.target);
            for c in &g.controls {
                let _ = write!(s, " {}{}", if c.on_one { '+' } else { '-' }, c.qubit);
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut label = String::new();
        let mut regs: Vec<(String, usize)> = Vec::new();
        let mut gates = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: &str| Error::Parse {
                line: ln + 1,
                reason: reason.to_string(),
            };
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap_or_default();
            match head {
                "circuit" => label = line["circuit".len()..].trim().to_string(),
                "register" => {
                    let name = parts.next().ok_or_else(|| err("missing register name"))?;
                    let width = parts
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("bad register width"))?;
                    regs.push((name.to_string(), width));
                }
                _ => {
                    let angle = parts.next().ok_or_else(|| err("missing angle field"))?;
                    let parse_angle = || angle.parse::<f64>().map_err(|_| err("bad angle"));
                    let kind = match head {
                        "X" => GateKind::X,
                        "H" => GateKind::H,
                        "Ry" => GateKind::Ry(parse_angle()?),
                        "Rz" => GateKind::Rz(parse_angle()?),
                        "Phase" => GateKind::Phase(parse_angle()?),
                        other => return Err(err(&format!("unknown gate {other}"))),
                    };
                    let target = parts
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err("bad target"))?;
                    let mut controls = Vec::new();
                    for c in parts {
                        let (on_one, q) = match c.as_bytes().first() {
                            Some(b'+') => (true, &c[1..]),
                            Some(b'-') => (false, &c[1..]),
                            _ => return Err(err("control must start with + or -")),
                        };
                        let qubit = q.parse().map_err(|_| err("bad control qubit"))?;
                        controls.push(Control { qubit, on_one });
                    }
                    gates.push(StmcGate { kind, target, controls });
                }
            }
        }
        let layout = Arc::new(RegisterLayout::new(&regs)?);
        Circuit::from_gates(layout, gates, &label)
    }
}

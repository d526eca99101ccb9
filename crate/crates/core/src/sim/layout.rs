use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::{Error, Result};

/// Widest layout the engine accepts.
pub const MAX_QUBITS: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl Register {
    pub fn qubits(&self) -> Range<usize> {
        self.offset..self.offset + self.width
    }
}

/// Ordered named registers; the first register occupies the lowest bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    registers: Vec<Register>,
    width: usize,
}

impl RegisterLayout {
    pub fn new<S: AsRef<str>>(spec: &[(S, usize)]) -> Result<Self> {
        let mut registers: Vec<Register> = Vec::with_capacity(spec.len());
        let mut width = 0;
        for (name, w) in spec {
            let name = name.as_ref();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::Layout(format!("invalid register name {name:?}")));
            }
            if *w == 0 {
                return Err(Error::Layout(format!("register {name} has zero width")));
            }
            if registers.iter().any(|r| r.name == name) {
                return Err(Error::Layout(format!("duplicate register {name}")));
            }
            registers.push(Register {
                name: name.to_string(),
                offset: width,
                width: *w,
            });
            width += w;
        }
        if width > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                width,
                limit: MAX_QUBITS,
            });
        }
        Ok(Self { registers, width })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        1usize << self.width
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    fn require(&self, name: &str) -> Result<&Register> {
        self.register(name)
            .ok_or_else(|| Error::Layout(format!("no register named {name}")))
    }

    pub fn qubits(&self, name: &str) -> Result<Range<usize>> {
        Ok(self.require(name)?.qubits())
    }

    pub fn qubit_list(&self, name: &str) -> Result<Vec<usize>> {
        Ok(self.qubits(name)?.collect())
    }

    /// Qubit `i` of register `name`.
    pub fn qubit(&self, name: &str, i: usize) -> Result<usize> {
        let r = self.require(name)?;
        if i >= r.width {
            return Err(Error::Layout(format!("register {name} has no qubit {i}")));
        }
        Ok(r.offset + i)
    }

    /// All qubits outside the named registers.
    pub fn qubits_except(&self, names: &[&str]) -> Vec<usize> {
        self.registers
            .iter()
            .filter(|r| !names.contains(&r.name.as_str()))
            .flat_map(Register::qubits)
            .collect()
    }

    /// Register and local index of a global qubit id.
    pub fn locate(&self, qubit: usize) -> Option<(&Register, usize)> {
        self.registers
            .iter()
            .find(|r| r.qubits().contains(&qubit))
            .map(|r| (r, qubit - r.offset))
    }
}

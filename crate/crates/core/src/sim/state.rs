use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods shadow it when std is linked
use num_traits::Float;

use super::circuit::Circuit;
use super::gate::{GateKind, StmcGate};
use super::layout::RegisterLayout;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `2^n` amplitudes over a register layout. Norm is not forced to one.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    layout: Arc<RegisterLayout>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0⟩`.
    pub fn zero(layout: Arc<RegisterLayout>) -> Self {
        Self::basis(layout, 0)
    }

    pub fn basis(layout: Arc<RegisterLayout>, index: usize) -> Self {
        let mut amps = vec![ZERO; layout.dim()];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { layout, amps }
    }

    pub fn from_amplitudes(layout: Arc<RegisterLayout>, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amps.len(),
            });
        }
        if !amps.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { layout, amps })
    }

    /// `|ψ⟩` on register `name`, every other qubit in `|0⟩`.
    pub fn from_register(layout: Arc<RegisterLayout>, name: &str, psi: &[Complex64]) -> Result<Self> {
        let r = layout.qubits(name)?;
        let width = r.end - r.start;
        if psi.len() != 1 << width {
            return Err(Error::DimensionMismatch {
                expected: 1 << width,
                found: psi.len(),
            });
        }
        let mut amps = vec![ZERO; layout.dim()];
        for (i, z) in psi.iter().enumerate() {
            amps[i << r.start] = *z;
        }
        Self::from_amplitudes(layout, amps)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Amplitudes of register `name` with every other qubit fixed to `|0⟩`.
    pub fn register_amplitudes(&self, name: &str) -> Result<Vec<Complex64>> {
        let r = self.layout.qubits(name)?;
        let width = r.end - r.start;
        Ok((0..1usize << width).map(|i| self.amps[i << r.start]).collect())
    }

    pub fn apply_gate(&mut self, g: &StmcGate) -> Result<()> {
        g.validate(self.layout.width())?;
        apply_kernel(&mut self.amps, g);
        Ok(())
    }

    pub fn apply(&mut self, c: &Circuit) -> Result<()> {
        if !Arc::ptr_eq(c.layout_arc(), &self.layout) && c.layout() != &*self.layout {
            return Err(Error::LayoutMismatch);
        }
        // gates were validated when the circuit was built
        for g in c.gates() {
            apply_kernel(&mut self.amps, g);
        }
        Ok(())
    }

    /// Zeroes every amplitude with any of `qubits` set; returns the kept norm².
    pub fn project_zero(&mut self, qubits: &[usize]) -> Result<f64> {
        let mut mask = 0usize;
        for &q in qubits {
            if q >= self.layout.width() {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    width: self.layout.width(),
                });
            }
            mask |= 1 << q;
        }
        let mut p = 0.0;
        for (i, z) in self.amps.iter_mut().enumerate() {
            if i & mask != 0 {
                *z = ZERO;
            } else {
                p += z.norm_sqr();
            }
        }
        Ok(p)
    }

    /// Projects `qubits` onto `|0...0⟩` and renormalizes. Returns the state and
    /// the projected probability relative to the input norm².
    pub fn postselect_zero(mut self, qubits: &[usize]) -> Result<(StateVector, f64)> {
        let before = self.norm_sqr();
        let kept = self.project_zero(qubits)?;
        if kept == 0.0 || before == 0.0 {
            return Err(Error::ZeroProbability);
        }
        let s = 1.0 / kept.sqrt();
        for z in self.amps.iter_mut() {
            *z *= s;
        }
        Ok((self, kept / before))
    }
}

/// Applies `c` to `s`.
pub fn apply(c: &Circuit, mut s: StateVector) -> Result<StateVector> {
    s.apply(c)?;
    Ok(s)
}

/// Calls `f(i0)` for every index with the target bit clear and the control
/// condition satisfied.
#[inline(always)]
fn for_each_pair(free: usize, base: usize, mut f: impl FnMut(usize)) {
    let mut sub = 0usize;
    loop {
        f(sub | base);
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
}

pub(crate) fn apply_kernel(amps: &mut [Complex64], g: &StmcGate) {
    let tbit = 1usize << g.target;
    let (cmask, cval) = g.control_masks();
    let free = (amps.len() - 1) & !(cmask | tbit);
    match g.kind {
        GateKind::X => for_each_pair(free, cval, |i0| amps.swap(i0, i0 | tbit)),
        GateKind::H => {
            let h = core::f64::consts::FRAC_1_SQRT_2;
            for_each_pair(free, cval, |i0| {
                let (a, b) = (amps[i0], amps[i0 | tbit]);
                amps[i0] = (a + b) * h;
                amps[i0 | tbit] = (a - b) * h;
            })
        }
        GateKind::Ry(t) => {
            let (s, c) = (0.5 * t).sin_cos();
            for_each_pair(free, cval, |i0| {
                let (a, b) = (amps[i0], amps[i0 | tbit]);
                amps[i0] = a * c - b * s;
                amps[i0 | tbit] = a * s + b * c;
            })
        }
        GateKind::Rz(t) => {
            let p0 = Complex64::from_polar(1.0, -0.5 * t);
            let p1 = p0.conj();
            for_each_pair(free, cval, |i0| {
                amps[i0] *= p0;
                amps[i0 | tbit] *= p1;
            })
        }
        GateKind::Phase(t) => {
            let p = Complex64::from_polar(1.0, t);
            for_each_pair(free, cval | tbit, |i1| amps[i1] *= p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::Control;

    fn layout(n: usize) -> Arc<RegisterLayout> {
        Arc::new(RegisterLayout::new(&[("q", n)]).unwrap())
    }

    #[test]
    fn x_flips() {
        let mut s = StateVector::zero(layout(1));
        s.apply_gate(&StmcGate::x(0)).unwrap();
        assert_eq!(s.amplitudes()[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn negative_control() {
        let l = layout(2);
        let g = StmcGate::x(1).with_controls([Control::zero(0)]);
        let mut s = StateVector::basis(l.clone(), 0);
        s.apply_gate(&g).unwrap();
        assert_eq!(s.amplitudes()[2].re, 1.0);
        let mut s = StateVector::basis(l, 1);
        s.apply_gate(&g).unwrap();
        assert_eq!(s.amplitudes()[1].re, 1.0);
    }

    #[test]
    fn bell_postselect() {
        let l = layout(2);
        let mut s = StateVector::zero(l);
        s.apply_gate(&StmcGate::h(0)).unwrap();
        s.apply_gate(&StmcGate::x(1).ctrl(0)).unwrap();
        let (p, prob) = s.postselect_zero(&[1]).unwrap();
        assert!((prob - 0.5).abs() < 1e-15);
        assert!((p.amplitudes()[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_probability_is_error() {
        let s = StateVector::basis(layout(1), 1);
        assert_eq!(s.postselect_zero(&[0]).unwrap_err(), Error::ZeroProbability);
    }
}

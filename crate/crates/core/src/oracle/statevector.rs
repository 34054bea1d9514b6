use num_complex::Complex64 as C64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::engine::{Operation, WireId};

use super::OracleError;

pub const MAX_WIRES: usize = 14;

/// Amplitudes over `2^n_wires` basis states; bit `w` of the index is wire `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_wires: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_wires` wires.
    pub fn new(n_wires: usize) -> Result<Self, OracleError> {
        Self::basis(n_wires, 0)
    }

    pub fn basis(n_wires: usize, index: usize) -> Result<Self, OracleError> {
        if n_wires > MAX_WIRES {
            return Err(OracleError::TooManyWires(n_wires));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_wires];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_wires, amps })
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check(&self, wires: &[WireId]) -> Result<(), OracleError> {
        match wires.iter().find(|w| w.0 >= self.n_wires) {
            Some(&w) => Err(OracleError::WireOutOfRange(w, self.n_wires)),
            None => Ok(()),
        }
    }

    /// Applies a unitary operation. `Cr2` reads its classical control from
    /// `outcomes` and applies `diag(1, −i)`, the correction used by the
    /// semiclassical inverse Fourier transform.
    pub fn apply_gate(&mut self, op: &Operation, outcomes: &[bool]) -> Result<(), OracleError> {
        self.check(&op.wires())?;
        match *op {
            Operation::X(w) => self.permute(|i| i ^ (1 << w.0)),
            Operation::Z(w) => self.phase(w.0, C64::new(-1.0, 0.0)),
            Operation::S(w) => self.phase(w.0, C64::new(0.0, 1.0)),
            Operation::H(w) => self.hadamard(w.0),
            Operation::Cnot { control, target } => {
                let (c, t) = (1 << control.0, 1 << target.0);
                self.permute(|i| if i & c != 0 { i ^ t } else { i })
            }
            Operation::Toffoli { a, b, target } => {
                let (ab, t) = ((1 << a.0) | (1 << b.0), 1 << target.0);
                self.permute(|i| if i & ab == ab { i ^ t } else { i })
            }
            Operation::Fredkin { control, x, y } => {
                let (c, xb, yb) = (1 << control.0, 1 << x.0, 1 << y.0);
                self.permute(|i| {
                    if i & c != 0 && ((i & xb == 0) != (i & yb == 0)) {
                        i ^ xb ^ yb
                    } else {
                        i
                    }
                })
            }
            Operation::Cr2 { control, target } => {
                if outcomes[control.0] {
                    self.phase(target.0, C64::new(0.0, -1.0));
                }
            }
            Operation::Prepare { .. } | Operation::Measure { .. } => {
                return Err(OracleError::NotUnitary(op.kind()))
            }
        }
        Ok(())
    }

    /// Multiplies the `|1⟩` component of `wire` by `e^{iθ}`.
    pub fn apply_phase(&mut self, wire: WireId, theta: f64) -> Result<(), OracleError> {
        self.check(&[wire])?;
        self.phase(wire.0, C64::from_polar(1.0, theta));
        Ok(())
    }

    /// Phase `e^{iθ}` on the `|11⟩` component of `(control, target)`.
    pub fn apply_controlled_phase(
        &mut self,
        control: WireId,
        target: WireId,
        theta: f64,
    ) -> Result<(), OracleError> {
        self.check(&[control, target])?;
        let mask = (1 << control.0) | (1 << target.0);
        let f = C64::from_polar(1.0, theta);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= f;
            }
        }
        Ok(())
    }

    /// Probability that measuring `wire` gives 1.
    pub fn probability_one(&self, wire: WireId) -> f64 {
        let b = 1 << wire.0;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & b != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects `wire` onto `outcome` and renormalizes; returns the
    /// probability of that outcome before projection.
    pub fn project(&mut self, wire: WireId, outcome: bool) -> f64 {
        let b = 1 << wire.0;
        let p = if outcome {
            self.probability_one(wire)
        } else {
            1.0 - self.probability_one(wire)
        };
        let scale = if p > 0.0 { 1.0 / p.sqrt() } else { 0.0 };
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & b != 0) == outcome {
                *a *= scale;
            } else {
                *a = C64::new(0.0, 0.0);
            }
        }
        p
    }

    fn permute(&mut self, f: impl Fn(usize) -> usize) {
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[f(i)] = *a;
        }
        self.amps = out;
    }

    fn phase(&mut self, w: usize, f: C64) {
        let b = 1 << w;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & b != 0 {
                *a *= f;
            }
        }
    }

    fn hadamard(&mut self, w: usize) {
        let b = 1 << w;
        for i in (0..self.amps.len()).filter(|i| i & b == 0) {
            let (a0, a1) = (self.amps[i], self.amps[i | b]);
            self.amps[i] = (a0 + a1) * FRAC_1_SQRT_2;
            self.amps[i | b] = (a0 - a1) * FRAC_1_SQRT_2;
        }
    }
}

/// Dense unitary of a gate sequence on `n_wires` wires; column `j` is the
/// image of basis state `j`.
pub fn gate_unitary(ops: &[Operation], n_wires: usize) -> Result<Vec<Vec<C64>>, OracleError> {
    (0..1usize << n_wires)
        .map(|j| {
            let mut s = StateVector::basis(n_wires, j)?;
            for op in ops {
                s.apply_gate(op, &[])?;
            }
            Ok(s.amps)
        })
        .collect()
}

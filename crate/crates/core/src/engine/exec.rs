use crate::qsl::{
    gate_cnot, gate_cr2, gate_fredkin, gate_h, gate_s, gate_toffoli, gate_x, gate_z, measure,
    prepare, QslRegister,
};
use crate::rng::RandomSource;

use super::{Circuit, EngineError, Operation};

/// A circuit that passed validation.
#[derive(Clone, Debug)]
pub struct Program {
    circuit: Circuit,
}

impl Program {
    pub fn new(circuit: Circuit) -> Result<Self, EngineError> {
        circuit.validate()?;
        Ok(Self { circuit })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn ops(&self) -> &[Operation] {
        self.circuit.ops()
    }

    /// Runs one shot on a fresh register; returns one bit per outcome slot.
    pub fn run_shot(&self, seed: u64, shot: u64) -> Vec<bool> {
        let mut rng = RandomSource::for_shot(seed, shot);
        let mut reg = QslRegister::new(self.circuit.n_wires());
        let mut outcomes = vec![false; self.circuit.n_slots()];
        for op in self.ops() {
            step(&mut reg, &mut outcomes, op, &mut rng);
        }
        outcomes
    }
}

/// Validates `circuit` and runs shot `shot` of the stream `seed`.
pub fn run_shot(circuit: &Circuit, seed: u64, shot: u64) -> Result<Vec<bool>, EngineError> {
    Ok(Program::new(circuit.clone())?.run_shot(seed, shot))
}

fn step(reg: &mut QslRegister, outcomes: &mut [bool], op: &Operation, rng: &mut RandomSource) {
    match *op {
        Operation::Prepare { wire, value } => reg.set(wire.0, prepare(value, rng)),
        Operation::Measure { wire, slot } => {
            let mut q = reg.get(wire.0);
            outcomes[slot.0] = measure(&mut q, rng);
            reg.set(wire.0, q);
        }
        _ => apply_gate(reg, op, outcomes).expect("non-gate ops handled above"),
    }
}

/// Applies a reversible operation (everything except `Prepare` and `Measure`).
/// Wires must be in range and distinct.
pub fn apply_gate(
    reg: &mut QslRegister,
    op: &Operation,
    outcomes: &[bool],
) -> Result<(), EngineError> {
    match *op {
        Operation::X(w) => reg.map1(w.0, gate_x),
        Operation::Z(w) => reg.map1(w.0, gate_z),
        Operation::H(w) => reg.map1(w.0, gate_h),
        Operation::S(w) => reg.map1(w.0, gate_s),
        Operation::Cnot { control, target } => reg.map2(control.0, target.0, gate_cnot),
        Operation::Toffoli { a, b, target } => reg.map3(a.0, b.0, target.0, gate_toffoli),
        Operation::Fredkin { control, x, y } => reg.map3(control.0, x.0, y.0, gate_fredkin),
        Operation::Cr2 { control, target } => {
            let k = outcomes[control.0];
            reg.map1(target.0, |q| gate_cr2(k, q))
        }
        Operation::Prepare { .. } | Operation::Measure { .. } => {
            return Err(EngineError::NotAGate(op.kind()))
        }
    }
    Ok(())
}

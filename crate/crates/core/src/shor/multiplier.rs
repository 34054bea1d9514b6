use crate::engine::{apply_gate, Operation, WireId};
use crate::qsl::{PhasedBit, QslRegister};

use super::{ShorError, MODULUS, OUTPUT_BITS};

/// Controlled `×multiplicand (mod 15)` network on the 4-bit output register.
///
/// Multiplying by 2, 4 or 8 rotates the register bits (mod 15 the top bit
/// wraps to weight 1); rotations are chains of Fredkin swaps. Multiplying by
/// `15 − b` is `×b` followed by the bitwise complement, four CNOTs from the
/// control. Residue 0 has two encodings, `0000` and `1111`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierSpec {
    multiplicand: u64,
    control: WireId,
    output: [WireId; OUTPUT_BITS as usize],
    ops: Vec<Operation>,
}

/// Fredkin swap pairs `(i, j)` on output bits `q_i`, `q_j`, left to right.
fn rotation(b: u64) -> &'static [(usize, usize)] {
    match b {
        2 => &[(3, 2), (2, 1), (1, 0)],
        4 => &[(3, 1), (2, 0)],
        8 => &[(1, 0), (2, 1), (3, 2)],
        _ => unreachable!(),
    }
}

/// `output[j]` holds bit `q_j` of weight `2^j`.
pub fn multiplier_circuit(
    a_eff: u64,
    control: WireId,
    output: [WireId; OUTPUT_BITS as usize],
) -> Result<MultiplierSpec, ShorError> {
    let (rot, negate) = match a_eff % MODULUS {
        1 => return Err(ShorError::IdentityMultiplier),
        b @ (2 | 4 | 8) => (b, false),
        b @ (13 | 11 | 7) => (MODULUS - b, true),
        _ => return Err(ShorError::UnsupportedMultiplier(a_eff)),
    };
    let mut ops: Vec<Operation> = rotation(rot)
        .iter()
        .map(|&(i, j)| Operation::Fredkin {
            control,
            x: output[i],
            y: output[j],
        })
        .collect();
    if negate {
        ops.extend((0..OUTPUT_BITS as usize).rev().map(|j| Operation::Cnot {
            control,
            target: output[j],
        }));
    }
    Ok(MultiplierSpec {
        multiplicand: a_eff % MODULUS,
        control,
        output,
        ops,
    })
}

impl MultiplierSpec {
    pub fn multiplicand(&self) -> u64 {
        self.multiplicand
    }

    pub fn control(&self) -> WireId {
        self.control
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    /// Computational action: runs the gates on a QSL register whose control
    /// bit is `control` and whose output register holds `x`.
    pub fn apply_classical(&self, control: bool, x: u64) -> u64 {
        let width = self
            .output
            .iter()
            .chain([&self.control])
            .map(|w| w.0 + 1)
            .max()
            .unwrap_or(0);
        let mut reg = QslRegister::new(width);
        reg.set(self.control.0, PhasedBit::new(control, false));
        for (j, w) in self.output.iter().enumerate() {
            reg.set(w.0, PhasedBit::new(x >> j & 1 == 1, false));
        }
        for op in &self.ops {
            apply_gate(&mut reg, op, &[]).expect("multipliers contain only gates");
        }
        let wires: Vec<usize> = self.output.iter().map(|w| w.0).collect();
        reg.computational_value(&wires)
    }
}

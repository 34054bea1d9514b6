use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WireId(pub usize);

/// Index of a classical outcome bit written by a measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotId(pub usize);

impl fmt::Display for WireId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

impl fmt::Display for SlotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WireRole {
    InputRegister,
    OutputRegister,
    Work,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Prepare,
    X,
    Z,
    H,
    S,
    Cnot,
    Toffoli,
    Fredkin,
    Cr2,
    Measure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    Prepare { wire: WireId, value: bool },
    X(WireId),
    Z(WireId),
    H(WireId),
    S(WireId),
    Cnot { control: WireId, target: WireId },
    Toffoli { a: WireId, b: WireId, target: WireId },
    Fredkin { control: WireId, x: WireId, y: WireId },
    /// R2 on `target`, applied when outcome `control` is 1.
    Cr2 { control: SlotId, target: WireId },
    Measure { wire: WireId, slot: SlotId },
}

impl Operation {
    pub fn kind(&self) -> OpKind {
        match self {
            Operation::Prepare { .. } => OpKind::Prepare,
            Operation::X(_) => OpKind::X,
            Operation::Z(_) => OpKind::Z,
            Operation::H(_) => OpKind::H,
            Operation::S(_) => OpKind::S,
            Operation::Cnot { .. } => OpKind::Cnot,
            Operation::Toffoli { .. } => OpKind::Toffoli,
            Operation::Fredkin { .. } => OpKind::Fredkin,
            Operation::Cr2 { .. } => OpKind::Cr2,
            Operation::Measure { .. } => OpKind::Measure,
        }
    }

    /// Quantum wires touched, in declaration order.
    pub fn wires(&self) -> Vec<WireId> {
        match *self {
            Operation::Prepare { wire, .. } | Operation::Measure { wire, .. } => vec![wire],
            Operation::X(w) | Operation::Z(w) | Operation::H(w) | Operation::S(w) => vec![w],
            Operation::Cr2 { target, .. } => vec![target],
            Operation::Cnot { control, target } => vec![control, target],
            Operation::Toffoli { a, b, target } => vec![a, b, target],
            Operation::Fredkin { control, x, y } => vec![control, x, y],
        }
    }

    pub fn classical_in(&self) -> Option<SlotId> {
        match *self {
            Operation::Cr2 { control, .. } => Some(control),
            _ => None,
        }
    }

    pub fn classical_out(&self) -> Option<SlotId> {
        match *self {
            Operation::Measure { slot, .. } => Some(slot),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    DuplicateWire(WireId),
    WireOutOfRange(WireId),
    SlotOutOfRange(SlotId),
    /// A classical control reads a slot that no earlier measurement wrote.
    ClassicalDependencyOrder(SlotId),
    SlotWrittenTwice(SlotId),
    SlotNeverWritten(SlotId),
    UnpreparedWire(WireId),
}

/// A validation failure, located at an operation index when it has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub op: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.op {
            write!(f, "op {i}: ")?;
        }
        match &self.kind {
            ViolationKind::DuplicateWire(w) => write!(f, "duplicate wire {w}"),
            ViolationKind::WireOutOfRange(w) => write!(f, "wire {w} out of range"),
            ViolationKind::SlotOutOfRange(s) => write!(f, "slot {s} out of range"),
            ViolationKind::ClassicalDependencyOrder(s) => {
                write!(f, "classical dependency order: {s} read before it is measured")
            }
            ViolationKind::SlotWrittenTwice(s) => write!(f, "slot {s} written twice"),
            ViolationKind::SlotNeverWritten(s) => write!(f, "slot {s} never written"),
            ViolationKind::UnpreparedWire(w) => write!(f, "wire {w} used before preparation"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid circuit: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationErrors(pub Vec<Violation>);

/// Ordered gate applications over quantum wires and classical outcome slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    roles: Vec<WireRole>,
    ops: Vec<Operation>,
    n_slots: usize,
}

impl Circuit {
    /// A circuit of `n_wires` work wires.
    pub fn new(n_wires: usize, n_slots: usize) -> Self {
        Self::with_roles(vec![WireRole::Work; n_wires], n_slots)
    }

    pub fn with_roles(roles: Vec<WireRole>, n_slots: usize) -> Self {
        Self {
            roles,
            ops: Vec::new(),
            n_slots,
        }
    }

    pub fn n_wires(&self) -> usize {
        self.roles.len()
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn roles(&self) -> &[WireRole] {
        &self.roles
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn wires_with_role(&self, role: WireRole) -> impl Iterator<Item = WireId> + '_ {
        self.roles
            .iter()
            .enumerate()
            .filter(move |(_, r)| **r == role)
            .map(|(i, _)| WireId(i))
    }

    pub fn push(&mut self, op: Operation) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn extend(&mut self, ops: impl IntoIterator<Item = Operation>) -> &mut Self {
        self.ops.extend(ops);
        self
    }

    pub fn prepare(&mut self, wire: usize, value: bool) -> &mut Self {
        self.push(Operation::Prepare { wire: WireId(wire), value })
    }

    pub fn x(&mut self, wire: usize) -> &mut Self {
        self.push(Operation::X(WireId(wire)))
    }

    pub fn z(&mut self, wire: usize) -> &mut Self {
        self.push(Operation::Z(WireId(wire)))
    }

    pub fn h(&mut self, wire: usize) -> &mut Self {
        self.push(Operation::H(WireId(wire)))
    }

    pub fn s(&mut self, wire: usize) -> &mut Self {
        self.push(Operation::S(WireId(wire)))
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(Operation::Cnot {
            control: WireId(control),
            target: WireId(target),
        })
    }

    pub fn toffoli(&mut self, a: usize, b: usize, target: usize) -> &mut Self {
        self.push(Operation::Toffoli {
            a: WireId(a),
            b: WireId(b),
            target: WireId(target),
        })
    }

    pub fn fredkin(&mut self, control: usize, x: usize, y: usize) -> &mut Self {
        self.push(Operation::Fredkin {
            control: WireId(control),
            x: WireId(x),
            y: WireId(y),
        })
    }

    pub fn cr2(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(Operation::Cr2 {
            control: SlotId(control),
            target: WireId(target),
        })
    }

    pub fn measure(&mut self, wire: usize, slot: usize) -> &mut Self {
        self.push(Operation::Measure {
            wire: WireId(wire),
            slot: SlotId(slot),
        })
    }

    /// Checks arity, ranges, wire preparation and classical ordering.
    /// Returns every violation found, not just the first.
    pub fn validate(&self) -> Result<(), ValidationErrors> {
        let mut errs = Vec::new();
        let mut prepared = vec![false; self.n_wires()];
        let mut written = vec![false; self.n_slots];
        let mut at = |i: usize, kind| errs.push(Violation { op: Some(i), kind });

        for (i, op) in self.ops.iter().enumerate() {
            let wires = op.wires();
            for (j, w) in wires.iter().enumerate() {
                if w.0 >= self.n_wires() {
                    at(i, ViolationKind::WireOutOfRange(*w));
                } else if wires[..j].contains(w) {
                    at(i, ViolationKind::DuplicateWire(*w));
                }
            }
            if let Some(s) = op.classical_in() {
                if s.0 >= self.n_slots {
                    at(i, ViolationKind::SlotOutOfRange(s));
                } else if !written[s.0] {
                    at(i, ViolationKind::ClassicalDependencyOrder(s));
                }
            }
            if let Operation::Prepare { wire, .. } = op {
                if wire.0 < self.n_wires() {
                    prepared[wire.0] = true;
                }
            } else {
                for w in wires.iter().filter(|w| w.0 < self.n_wires()) {
                    if !prepared[w.0] {
                        at(i, ViolationKind::UnpreparedWire(*w));
                    }
                }
            }
            if let Some(s) = op.classical_out() {
                if s.0 >= self.n_slots {
                    at(i, ViolationKind::SlotOutOfRange(s));
                } else if written[s.0] {
                    at(i, ViolationKind::SlotWrittenTwice(s));
                } else {
                    written[s.0] = true;
                }
            }
        }
        for (s, _) in written.iter().enumerate().filter(|(_, w)| !**w) {
            errs.push(Violation {
                op: None,
                kind: ViolationKind::SlotNeverWritten(SlotId(s)),
            });
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(ValidationErrors(errs))
        }
    }
}

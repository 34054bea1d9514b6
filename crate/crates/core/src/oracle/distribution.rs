use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde_json::{Map, Number, Value};

use crate::engine::{Circuit, Operation, OutcomeAssembler, Program, WireId};
use crate::shor::{
    input_wire, multiplier_circuit, output_wires, power_schedule, ShorParams, INPUT_BITS,
    OUTPUT_BITS,
};

use super::{OracleError, StateVector};

/// Branches lighter than this are dropped by the measurement interpreter.
const PRUNE: f64 = 1e-14;

/// Probabilities over `m ∈ [0, 2^n_bits)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    base: Option<u64>,
    n_bits: u32,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(base: Option<u64>, n_bits: u32, probs: Vec<f64>) -> Self {
        assert_eq!(probs.len(), 1 << n_bits, "probability vector length");
        Self {
            base,
            n_bits,
            probs,
        }
    }

    pub fn base(&self) -> Option<u64> {
        self.base
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, m: u64) -> f64 {
        self.probs[m as usize]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Outcomes with probability above `eps`.
    pub fn support(&self, eps: f64) -> Vec<u64> {
        (0..self.probs.len() as u64)
            .filter(|&m| self.probs[m as usize] > eps)
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `{"a": a, "probs": {m: p}}`, probabilities rounded to 12 significant
    /// digits, entries below `1e-14` omitted.
    pub fn to_json(&self) -> String {
        let mut probs = Map::new();
        for (m, &p) in self.probs.iter().enumerate().filter(|(_, &p)| p >= PRUNE) {
            let rounded: f64 = format!("{p:.11e}").parse().expect("float round trip");
            probs.insert(
                m.to_string(),
                Value::Number(Number::from_f64(rounded).expect("finite")),
            );
        }
        let mut obj = Map::new();
        obj.insert("a".into(), self.base.map_or(Value::Null, Value::from));
        obj.insert("probs".into(), Value::Object(probs));
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
        s.push('\n');
        s
    }
}

/// The order-finding state just before the inverse Fourier transform, with
/// the largest deviation of the squared norm from 1 seen after any gate.
#[derive(Clone, Debug)]
pub struct IdealState {
    pub state: StateVector,
    pub max_norm_drift: f64,
}

/// Input register in uniform superposition, output register at 1, then the
/// same controlled multiplier networks the QSL circuit uses, applied as
/// unitaries. Wire layout matches [`crate::shor`].
pub fn ideal_state(params: &ShorParams) -> Result<IdealState, OracleError> {
    let n = (INPUT_BITS + OUTPUT_BITS) as usize;
    let mut state = StateVector::new(n)?;
    let mut drift = 0.0f64;
    let mut apply = |s: &mut StateVector, op: Operation| -> Result<(), OracleError> {
        s.apply_gate(&op, &[])?;
        drift = drift.max((s.norm_sqr() - 1.0).abs());
        Ok(())
    };
    apply(&mut state, Operation::X(output_wires()[0]))?;
    for k in 0..INPUT_BITS {
        apply(&mut state, Operation::H(input_wire(k)))?;
    }
    for e in power_schedule(params).non_identity().rev() {
        let spec = multiplier_circuit(e.multiplicand, input_wire(e.k), output_wires())?;
        for op in spec.ops() {
            apply(&mut state, *op)?;
        }
    }
    Ok(IdealState {
        state,
        max_norm_drift: drift,
    })
}

/// Exact outcome distribution of the ideal order-finding subroutine, using a
/// full inverse Fourier transform over the input register:
/// `P(m) = Σ_o |2^{-n} Σ_x ψ(x, o) e^{−2πi·x·m/2^{2n}}|²`.
pub fn ideal_distribution(params: &ShorParams) -> Result<Distribution, OracleError> {
    let IdealState { state, .. } = ideal_state(params)?;
    let q = 1usize << INPUT_BITS;
    let roots: Vec<C64> = (0..q)
        .map(|j| C64::from_polar(1.0, -2.0 * PI * j as f64 / q as f64))
        .collect();
    let norm = 1.0 / (q as f64).sqrt();
    let amps = state.amplitudes();
    let mut probs = vec![0.0; q];
    for o in 0..1usize << OUTPUT_BITS {
        let column = &amps[o * q..(o + 1) * q];
        if column.iter().all(|a| a.norm_sqr() == 0.0) {
            continue;
        }
        for (m, p) in probs.iter_mut().enumerate() {
            let amp: C64 = column
                .iter()
                .enumerate()
                .map(|(x, a)| a * roots[(x * m) % q])
                .sum();
            *p += (amp * norm).norm_sqr();
        }
    }
    Ok(Distribution::new(Some(params.base()), INPUT_BITS, probs))
}

struct Branch {
    state: StateVector,
    outcomes: Vec<bool>,
    fresh: Vec<bool>,
    weight: f64,
    pc: usize,
}

/// Exact outcome distribution of any valid circuit under quantum semantics,
/// following every measurement branch (mid-circuit measurements and classical
/// controls included). Wires start in `|0⟩`; preparing a wire that was
/// already used resets it through a measurement.
pub fn circuit_distribution(
    circuit: &Circuit,
    assembler: &OutcomeAssembler,
) -> Result<Distribution, OracleError> {
    let program = Program::new(circuit.clone())?;
    let mut probs = vec![0.0; 1 << assembler.n_bits()];
    let mut stack = vec![Branch {
        state: StateVector::new(circuit.n_wires())?,
        outcomes: vec![false; circuit.n_slots()],
        fresh: vec![true; circuit.n_wires()],
        weight: 1.0,
        pc: 0,
    }];

    while let Some(mut b) = stack.pop() {
        let mut forked = false;
        while b.pc < program.ops().len() {
            let op = program.ops()[b.pc];
            b.pc += 1;
            match op {
                Operation::Prepare { wire, value } => {
                    if b.fresh[wire.0] {
                        b.fresh[wire.0] = false;
                        if value {
                            b.state.apply_gate(&Operation::X(wire), &[])?;
                        }
                    } else {
                        for child in split(&b, wire) {
                            let (mut child, was_one) = child;
                            if was_one != value {
                                child.state.apply_gate(&Operation::X(wire), &[])?;
                            }
                            stack.push(child);
                        }
                        forked = true;
                        break;
                    }
                }
                Operation::Measure { wire, slot } => {
                    for (mut child, one) in split(&b, wire) {
                        child.outcomes[slot.0] = one;
                        stack.push(child);
                    }
                    forked = true;
                    break;
                }
                _ => b.state.apply_gate(&op, &b.outcomes)?,
            }
        }
        if !forked {
            probs[assembler.assemble(&b.outcomes) as usize] += b.weight;
        }
    }
    Ok(Distribution::new(None, assembler.n_bits(), probs))
}

fn split(b: &Branch, wire: WireId) -> Vec<(Branch, bool)> {
    [false, true]
        .into_iter()
        .filter_map(|one| {
            let mut state = b.state.clone();
            let p = state.project(wire, one);
            (b.weight * p > PRUNE).then(|| {
                (
                    Branch {
                        state,
                        outcomes: b.outcomes.clone(),
                        fresh: b.fresh.clone(),
                        weight: b.weight * p,
                        pc: b.pc,
                    },
                    one,
                )
            })
        })
        .collect()
}

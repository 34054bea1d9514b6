use crate::engine::{
    BitOrder, Circuit, Histogram, Operation, OutcomeAssembler, Program, SampleOptions, SlotId,
    WireRole,
};

use super::{
    input_wire, multiplier_circuit, output_wires, power_schedule, MultiplierSpec, PowerSchedule,
    ShorError, ShorParams, INPUT_BITS, OUTPUT_BITS,
};

/// The order-finding circuit for one base, ready to execute.
#[derive(Clone, Debug)]
pub struct Subroutine {
    params: ShorParams,
    schedule: PowerSchedule,
    multipliers: Vec<(u32, MultiplierSpec)>,
    program: Program,
    assembler: OutcomeAssembler,
}

/// Builds the semiclassical order-finding circuit:
///
/// 1. output register prepared to 1, every input qubit prepared to 0 and
///    rotated by H;
/// 2. controlled multipliers `×a^(2^k)` for the non-identity powers, highest
///    power first;
/// 3. input qubits read out in decreasing `k`: an R2 classically controlled
///    by the outcome of qubit `k + 1`, then H, then measurement into slot `k`.
///
/// Higher-order rotations are not emitted: for N = 15 their controls come
/// from identity-multiplier qubits and are always 0.
pub fn build_subroutine(params: &ShorParams) -> Result<Subroutine, ShorError> {
    let n_in = INPUT_BITS as usize;
    let n_out = OUTPUT_BITS as usize;
    let mut roles = vec![WireRole::InputRegister; n_in];
    roles.extend(vec![WireRole::OutputRegister; n_out]);
    let mut circuit = Circuit::with_roles(roles, n_in);

    let out = output_wires();
    for (j, &w) in out.iter().enumerate() {
        circuit.push(Operation::Prepare { wire: w, value: j == 0 });
    }
    for k in 0..INPUT_BITS {
        let w = input_wire(k);
        circuit.push(Operation::Prepare { wire: w, value: false });
        circuit.push(Operation::H(w));
    }

    let schedule = power_schedule(params);
    let mut multipliers = Vec::new();
    for e in schedule.non_identity().rev() {
        let spec = multiplier_circuit(e.multiplicand, input_wire(e.k), out)?;
        circuit.extend(spec.ops().iter().copied());
        multipliers.push((e.k, spec));
    }

    for k in (0..INPUT_BITS).rev() {
        let w = input_wire(k);
        if k + 1 < INPUT_BITS {
            circuit.push(Operation::Cr2 {
                control: SlotId(k as usize + 1),
                target: w,
            });
        }
        circuit.push(Operation::H(w));
        circuit.push(Operation::Measure {
            wire: w,
            slot: SlotId(k as usize),
        });
    }

    let assembler = OutcomeAssembler::new(
        (0..INPUT_BITS)
            .map(|k| (SlotId(k as usize), INPUT_BITS - 1 - k))
            .collect(),
        INPUT_BITS,
        BitOrder::MsbFirstByPower,
    )?;
    Ok(Subroutine {
        params: *params,
        schedule,
        multipliers,
        program: Program::new(circuit)?,
        assembler,
    })
}

impl Subroutine {
    pub fn params(&self) -> &ShorParams {
        &self.params
    }

    pub fn schedule(&self) -> &PowerSchedule {
        &self.schedule
    }

    /// `(k, multiplier)` in circuit order.
    pub fn multipliers(&self) -> &[(u32, MultiplierSpec)] {
        &self.multipliers
    }

    pub fn circuit(&self) -> &Circuit {
        self.program.circuit()
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn assembler(&self) -> &OutcomeAssembler {
        &self.assembler
    }

    /// One shot, assembled into `m`.
    pub fn run_shot(&self, seed: u64, shot: u64) -> u64 {
        self.assembler.assemble(&self.program.run_shot(seed, shot))
    }

    pub fn sample(&self, opts: &SampleOptions) -> Result<Histogram, ShorError> {
        Ok(self
            .program
            .sample(&self.assembler, opts)?
            .with_problem(self.params.modulus(), self.params.base()))
    }
}

pub fn run_subroutine(params: &ShorParams, opts: &SampleOptions) -> Result<Histogram, ShorError> {
    build_subroutine(params)?.sample(opts)
}

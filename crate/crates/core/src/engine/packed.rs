//! Bit-sliced execution: lane `l` of every word is shot `64·block + l`.

use crate::rng::WordSource;

use super::{Operation, Program};

#[derive(Clone, Copy, Debug, Default)]
struct Lanes {
    c: u64,
    p: u64,
}

/// Runs the 64 shots of `block`, returning one outcome word per slot.
pub fn run_block(program: &Program, seed: u64, block: u64) -> Vec<u64> {
    let circuit = program.circuit();
    let mut rng = WordSource::for_block(seed, block);
    let mut reg = vec![Lanes::default(); circuit.n_wires()];
    let mut out = vec![0u64; circuit.n_slots()];

    for op in program.ops() {
        match *op {
            Operation::Prepare { wire, value } => {
                reg[wire.0] = Lanes {
                    c: if value { !0 } else { 0 },
                    p: rng.next_word(),
                }
            }
            Operation::Measure { wire, slot } => {
                out[slot.0] = reg[wire.0].c;
                reg[wire.0].p = rng.next_word();
            }
            Operation::X(w) => reg[w.0].c = !reg[w.0].c,
            Operation::Z(w) => reg[w.0].p = !reg[w.0].p,
            Operation::H(w) => {
                let q = &mut reg[w.0];
                std::mem::swap(&mut q.c, &mut q.p);
            }
            Operation::S(w) => reg[w.0].p ^= reg[w.0].c,
            Operation::Cnot { control, target } => {
                reg[target.0].c ^= reg[control.0].c;
                reg[control.0].p ^= reg[target.0].p;
            }
            Operation::Toffoli { a, b, target } => {
                let (ac, bc, tp) = (reg[a.0].c, reg[b.0].c, reg[target.0].p);
                reg[target.0].c ^= ac & bc;
                reg[a.0].p ^= bc & tp;
                reg[b.0].p ^= ac & tp;
            }
            Operation::Fredkin { control, x, y } => {
                let k = reg[control.0].c;
                let dc = reg[x.0].c ^ reg[y.0].c;
                let dp = reg[x.0].p ^ reg[y.0].p;
                reg[control.0].p ^= dc & dp;
                reg[x.0].c ^= k & dc;
                reg[y.0].c ^= k & dc;
                reg[x.0].p ^= k & dp;
                reg[y.0].p ^= k & dp;
            }
            Operation::Cr2 { control, target } => {
                let k = out[control.0];
                let q = &mut reg[target.0];
                q.p ^= q.c & k;
                q.c ^= k;
            }
        }
    }
    out
}

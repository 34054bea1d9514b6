use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::LANES;

use super::histogram::MAX_OUTCOME_BITS;
use super::{run_block, BitOrder, Circuit, EngineError, Histogram, Program, SlotId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Executor {
    Scalar,
    #[default]
    BitSliced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub shots: u64,
    pub seed: u64,
    /// Worker count; `None` uses the global rayon pool. Never affects results.
    pub threads: Option<usize>,
    pub executor: Executor,
}

impl SampleOptions {
    pub fn new(shots: u64, seed: u64) -> Self {
        Self {
            shots,
            seed,
            threads: None,
            executor: Executor::default(),
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn executor(mut self, executor: Executor) -> Self {
        self.executor = executor;
        self
    }
}

/// Maps a shot's outcome slots onto the bits of the integer `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeAssembler {
    positions: Vec<(SlotId, u32)>,
    n_bits: u32,
    bit_order: BitOrder,
}

impl OutcomeAssembler {
    pub fn new(
        positions: Vec<(SlotId, u32)>,
        n_bits: u32,
        bit_order: BitOrder,
    ) -> Result<Self, EngineError> {
        if n_bits > MAX_OUTCOME_BITS {
            return Err(EngineError::Assembler(format!("{n_bits} bits is too wide")));
        }
        let mut seen = 0u64;
        for &(slot, pos) in &positions {
            if pos >= n_bits || seen & (1 << pos) != 0 {
                return Err(EngineError::Assembler(format!(
                    "bit {pos} for {slot} is out of range or repeated"
                )));
            }
            seen |= 1 << pos;
        }
        Ok(Self {
            positions,
            n_bits,
            bit_order,
        })
    }

    /// Slot `i` to bit `i` for every slot of `circuit`.
    pub fn slot_order(circuit: &Circuit) -> Self {
        let n = circuit.n_slots() as u32;
        Self::new(
            (0..n).map(|i| (SlotId(i as usize), i)).collect(),
            n,
            BitOrder::SlotOrder,
        )
        .expect("slot order is a valid layout")
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn bit_order(&self) -> BitOrder {
        self.bit_order
    }

    pub fn positions(&self) -> &[(SlotId, u32)] {
        &self.positions
    }

    pub fn assemble(&self, outcomes: &[bool]) -> u64 {
        self.positions
            .iter()
            .map(|&(s, pos)| (outcomes[s.0] as u64) << pos)
            .sum()
    }

    fn assemble_lane(&self, words: &[u64], lane: u64) -> u64 {
        self.positions
            .iter()
            .map(|&(s, pos)| ((words[s.0] >> lane) & 1) << pos)
            .sum()
    }

    fn check(&self, circuit: &Circuit) -> Result<(), EngineError> {
        match self.positions.iter().find(|(s, _)| s.0 >= circuit.n_slots()) {
            Some((s, _)) => Err(EngineError::Assembler(format!("{s} not in circuit"))),
            None => Ok(()),
        }
    }
}

/// Blocks of 64 shots handed to one worker at a time.
const CHUNK_BLOCKS: u64 = 64;

/// Runs `opts.shots` independent shots and histograms the assembled `m`.
///
/// Shot `i` always uses substream `(seed, i)`, and per-chunk counts are
/// combined by integer addition, so the result is identical for every thread
/// count and for both executors.
pub fn sample(
    circuit: &Circuit,
    assembler: &OutcomeAssembler,
    opts: &SampleOptions,
) -> Result<Histogram, EngineError> {
    Program::new(circuit.clone())?.sample(assembler, opts)
}

impl Program {
    pub fn sample(
        &self,
        assembler: &OutcomeAssembler,
        opts: &SampleOptions,
    ) -> Result<Histogram, EngineError> {
        if opts.shots == 0 {
            return Err(EngineError::EmptySample);
        }
        assembler.check(self.circuit())?;
        let dense = match opts.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| EngineError::ThreadPool(e.to_string()))?
                .install(|| self.dense_counts(assembler, opts)),
            None => self.dense_counts(assembler, opts),
        };
        let hist = Histogram::from_dense(&dense, assembler.n_bits(), assembler.bit_order())
            .expect("assembler keeps outcomes in range");
        Ok(hist.with_seed(opts.seed))
    }

    fn dense_counts(&self, assembler: &OutcomeAssembler, opts: &SampleOptions) -> Vec<u64> {
        let space = 1usize << assembler.n_bits();
        let chunk_shots = CHUNK_BLOCKS * LANES;
        let n_chunks = opts.shots.div_ceil(chunk_shots);
        (0..n_chunks)
            .into_par_iter()
            .map(|chunk| {
                let start = chunk * chunk_shots;
                let end = (start + chunk_shots).min(opts.shots);
                let mut counts = vec![0u64; space];
                match opts.executor {
                    Executor::Scalar => {
                        for shot in start..end {
                            let out = self.run_shot(opts.seed, shot);
                            counts[assembler.assemble(&out) as usize] += 1;
                        }
                    }
                    Executor::BitSliced => {
                        for block in start / LANES..end.div_ceil(LANES) {
                            let words = run_block(self, opts.seed, block);
                            let first = block * LANES;
                            let lanes = (end - first).min(LANES);
                            for lane in 0..lanes {
                                counts[assembler.assemble_lane(&words, lane) as usize] += 1;
                            }
                        }
                    }
                }
                counts
            })
            .reduce(
                || vec![0u64; space],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }
}

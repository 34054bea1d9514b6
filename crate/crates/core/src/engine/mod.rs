//! Circuit representation, validation and shot execution.
//!
//! Two executors share one program format: a scalar interpreter over
//! [`QslRegister`](crate::qsl::QslRegister) and a bit-sliced interpreter that
//! evaluates 64 shots per machine word. Both draw identical random bits for a
//! given `(seed, shot)` (see [`crate::rng`]), so they produce identical
//! histograms.

mod circuit;
mod exec;
mod histogram;
mod packed;
mod sample;

pub use circuit::{
    Circuit, OpKind, Operation, SlotId, ValidationErrors, Violation, ViolationKind, WireId,
    WireRole,
};
pub use exec::{apply_gate, run_shot, Program};
pub use histogram::{BitOrder, Histogram, HistogramError};
pub use packed::run_block;
pub use sample::{sample, Executor, OutcomeAssembler, SampleOptions};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
    #[error("empty sample: shots must be at least 1")]
    EmptySample,
    #[error("{0:?} is not a reversible gate")]
    NotAGate(OpKind),
    #[error("outcome assembler: {0}")]
    Assembler(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

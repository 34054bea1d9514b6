//! Exact reference: a dense state-vector simulator for the same circuits,
//! ideal outcome distributions, and the square statistical overlap (SSO)
//! between sampled and ideal distributions.

mod distribution;
mod sso;
mod statevector;

pub use distribution::{circuit_distribution, ideal_distribution, ideal_state, Distribution, IdealState};
pub use sso::{square_statistical_overlap, sso, BootstrapOptions, SsoResult};
pub use statevector::{gate_unitary, StateVector, MAX_WIRES};

use crate::engine::{EngineError, OpKind, WireId};
use crate::shor::ShorError;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("wire {0} out of range for a {1}-wire state")]
    WireOutOfRange(WireId, usize),
    #[error("{0} wires exceeds the dense simulator limit of {MAX_WIRES}")]
    TooManyWires(usize),
    #[error("{0:?} is not a unitary gate")]
    NotUnitary(OpKind),
    #[error("empty histogram")]
    EmptyHistogram,
    #[error("outcome spaces differ: {0} vs {1}")]
    OutcomeSpace(usize, usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Shor(#[from] ShorError),
}

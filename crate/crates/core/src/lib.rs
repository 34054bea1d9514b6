//! Shor's algorithm for N = 15 on quantum simulation logic (QSL), where every
//! qubit is simulated by a computational bit and a phase bit.
//!
//! - [`qsl`]: bit-pair primitives and gate tables.
//! - [`engine`]: circuit IR, validation, scalar and bit-sliced shot execution,
//!   seeded parallel sampling into [`engine::Histogram`]s.
//! - [`shor`]: modular multiplier networks, the semiclassical order-finding
//!   subroutine, and classical pre/post-processing.
//! - [`oracle`]: exact state-vector reference distributions and the square
//!   statistical overlap (SSO) fidelity.
//! - [`selftest`]: exhaustive invariant checks used by the CLI.

pub mod engine;
pub mod oracle;
pub mod qsl;
pub mod rng;
pub mod selftest;
pub mod shor;

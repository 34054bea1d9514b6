//! Order finding for N = 15: multiplier synthesis, the semiclassical
//! subroutine circuit, and the classical steps around it.
//!
//! Wire layout of the subroutine: input qubit `k` (the one controlling
//! `×a^(2^k)`) is wire `k` and writes outcome slot `k`; output bit `q_j`
//! (weight `2^j`) is wire `INPUT_BITS + j`.

mod driver;
mod multiplier;
mod postprocess;
mod schedule;
mod subroutine;

use num_integer::Integer;

use crate::engine::{EngineError, WireId};

pub use driver::{shor_driver, Attempt, DriverConfig, FactorReport};
pub use multiplier::{multiplier_circuit, MultiplierSpec};
pub use postprocess::{
    continued_fraction_order, convergents, factor_from_order, is_good_candidate,
    multiplicative_order,
};
pub use schedule::{power_schedule, PowerEntry, PowerSchedule};
pub use subroutine::{build_subroutine, run_subroutine, Subroutine};

/// The only supported modulus.
pub const MODULUS: u64 = 15;
/// Output register width `n`.
pub const OUTPUT_BITS: u32 = 4;
/// Input register width `2n`.
pub const INPUT_BITS: u32 = 2 * OUTPUT_BITS;
/// Bases that need the quantum subroutine, in the usual reporting order.
pub const VALID_BASES: [u64; 6] = [2, 4, 7, 8, 11, 13];

#[derive(Debug, thiserror::Error)]
pub enum ShorError {
    #[error("{reason}: not a valid subroutine base (valid: 2, 4, 7, 8, 11, 13)")]
    InvalidBase { base: u64, reason: String },
    #[error("identity multiplier must be omitted, not synthesized")]
    IdentityMultiplier,
    #[error("no multiplier network for ×{0} (mod 15)")]
    UnsupportedMultiplier(u64),
    #[error("unsupported modulus {0}: only N = 15 is implemented")]
    UnsupportedModulus(u64),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A validated subroutine base `a` for N = 15.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShorParams {
    base: u64,
}

impl ShorParams {
    pub fn new(base: u64) -> Result<Self, ShorError> {
        let invalid = |reason: String| ShorError::InvalidBase { base, reason };
        if base == 0 || base >= MODULUS {
            return Err(invalid(format!("a={base} is not a residue in 1..15")));
        }
        let g = base.gcd(&MODULUS);
        if g != 1 {
            return Err(invalid(format!("gcd({base},{MODULUS})={g}")));
        }
        if base == 1 || base == MODULUS - 1 {
            return Err(invalid(format!("a={base} ≡ ±1 (mod {MODULUS})")));
        }
        Ok(Self { base })
    }

    pub fn all() -> impl Iterator<Item = ShorParams> {
        VALID_BASES.iter().map(|&a| Self { base: a })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn modulus(&self) -> u64 {
        MODULUS
    }

    pub fn output_bits(&self) -> u32 {
        OUTPUT_BITS
    }

    pub fn input_bits(&self) -> u32 {
        INPUT_BITS
    }

    /// `Q = 2^(2n)`.
    pub fn outcome_space(&self) -> u64 {
        1 << INPUT_BITS
    }

    /// Multiplicative order of `a` mod 15.
    pub fn order(&self) -> u64 {
        multiplicative_order(self.base, MODULUS).expect("valid bases are units")
    }
}

pub fn input_wire(k: u32) -> WireId {
    WireId(k as usize)
}

/// Output wires `[q0, q1, q2, q3]`.
pub fn output_wires() -> [WireId; OUTPUT_BITS as usize] {
    std::array::from_fn(|j| WireId(INPUT_BITS as usize + j))
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

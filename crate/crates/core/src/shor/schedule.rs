use super::{mod_pow, ShorParams, INPUT_BITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerEntry {
    /// Index of the controlling input qubit.
    pub k: u32,
    /// `2^k`.
    pub exponent: u64,
    /// `a^(2^k) mod N`.
    pub multiplicand: u64,
    pub is_identity: bool,
}

/// Which controlled multiplier each input qubit carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSchedule {
    pub base: u64,
    pub entries: Vec<PowerEntry>,
}

pub fn power_schedule(params: &ShorParams) -> PowerSchedule {
    let entries = (0..INPUT_BITS)
        .map(|k| {
            let exponent = 1u64 << k;
            let multiplicand = mod_pow(params.base(), exponent, params.modulus());
            PowerEntry {
                k,
                exponent,
                multiplicand,
                is_identity: multiplicand == 1,
            }
        })
        .collect();
    PowerSchedule {
        base: params.base(),
        entries,
    }
}

impl PowerSchedule {
    pub fn non_identity(&self) -> impl DoubleEndedIterator<Item = &PowerEntry> {
        self.entries.iter().filter(|e| !e.is_identity)
    }

    pub fn identity_qubits(&self) -> Vec<u32> {
        self.entries.iter().filter(|e| e.is_identity).map(|e| e.k).collect()
    }
}

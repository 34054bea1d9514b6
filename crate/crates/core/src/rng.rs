//! Seeded random bit streams.
//!
//! Every random event of a shot (a phase bit drawn by a source or a
//! measurement) consumes one 64-bit word from a ChaCha8 stream. Shots are
//! grouped into blocks of [`LANES`] consecutive shot indices: block `b` reads
//! stream `b`, and shot `64·b + l` keeps bit `l` of every word. The bit-sliced
//! executor consumes the same words whole, so both executors see exactly the
//! same random bits for every shot, independent of scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shots packed into one machine word by the bit-sliced executor.
pub const LANES: u64 = 64;

fn stream(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Unbiased bit stream for a single shot.
#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    lane: u32,
}

impl RandomSource {
    pub fn for_shot(seed: u64, shot: u64) -> Self {
        Self {
            rng: stream(seed, shot / LANES),
            lane: (shot % LANES) as u32,
        }
    }

    pub fn next_bit(&mut self) -> bool {
        (self.rng.next_u64() >> self.lane) & 1 == 1
    }
}

/// Word stream shared by the [`LANES`] shots of one block; bit `l` of each
/// word belongs to shot `64·block + l`.
#[derive(Clone, Debug)]
pub struct WordSource {
    rng: ChaCha8Rng,
}

impl WordSource {
    pub fn for_block(seed: u64, block: u64) -> Self {
        Self {
            rng: stream(seed, block),
        }
    }

    pub fn next_word(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bits() {
        let a: Vec<bool> = {
            let mut r = RandomSource::for_shot(42, 1000);
            (0..256).map(|_| r.next_bit()).collect()
        };
        let b: Vec<bool> = {
            let mut r = RandomSource::for_shot(42, 1000);
            (0..256).map(|_| r.next_bit()).collect()
        };
        assert_eq!(a, b);
        let mut other = RandomSource::for_shot(43, 1000);
        let c: Vec<bool> = (0..256).map(|_| other.next_bit()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn shot_bits_are_lanes_of_block_words() {
        let mut words = WordSource::for_block(7, 3);
        let words: Vec<u64> = (0..16).map(|_| words.next_word()).collect();
        for lane in [0u64, 1, 31, 63] {
            let mut src = RandomSource::for_shot(7, 3 * LANES + lane);
            for w in &words {
                assert_eq!(src.next_bit(), (w >> lane) & 1 == 1);
            }
        }
    }

    #[test]
    fn frequency_of_ones() {
        let draws = 100_000u64;
        let mut ones = 0u64;
        // spread across shots and lanes so the test covers the mapping too
        for shot in 0..1000 {
            let mut src = RandomSource::for_shot(2024, shot * 37);
            for _ in 0..draws / 1000 {
                ones += src.next_bit() as u64;
            }
        }
        let freq = ones as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.005, "frequency {freq}");
    }
}

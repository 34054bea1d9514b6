use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    build_subroutine, continued_fraction_order, factor_from_order, ShorError, ShorParams,
    Subroutine, MODULUS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DriverConfig {
    pub modulus: u64,
    pub seed: u64,
    /// Budget of subroutine invocations.
    pub max_retries: u32,
}

impl DriverConfig {
    pub const DEFAULT_MAX_RETRIES: u32 = 32;

    pub fn new(seed: u64) -> Self {
        Self {
            modulus: MODULUS,
            seed,
            max_retries: Self::DEFAULT_MAX_RETRIES,
        }
    }
}

/// One draw of `a` and what came of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub a: u64,
    /// Set when `gcd(a, N) > 1` short-circuited the subroutine.
    pub gcd: Option<u64>,
    pub m: Option<u64>,
    pub r: Option<u64>,
    pub factors: BTreeSet<u64>,
}

/// Outcome of one end-to-end factoring run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    #[serde(rename = "N")]
    pub modulus: u64,
    /// Base of the final attempt.
    pub a: Option<u64>,
    pub m: Option<u64>,
    pub r: Option<u64>,
    pub factors: BTreeSet<u64>,
    pub invocations: u32,
    pub seed: u64,
    pub attempts: Vec<Attempt>,
}

impl FactorReport {
    pub fn succeeded(&self) -> bool {
        !self.factors.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Adds the cofactor of every factor found so the set covers the split of `n`.
fn with_cofactors(found: BTreeSet<u64>, n: u64) -> BTreeSet<u64> {
    found.iter().flat_map(|&f| [f, n / f]).collect()
}

/// Runs the full classical loop around the subroutine.
///
/// Each attempt draws `a` uniformly from `2..=N−2`. If `gcd(a, N) > 1` the
/// factor is reported without quantum work. Otherwise one subroutine shot is
/// spent (if the budget of `max_retries` invocations allows), its outcome is
/// turned into a candidate order by continued fractions, and
/// `gcd(a^(r/2) ± 1, N)` is tried. Failed attempts redraw `a`.
///
/// Draws come from ChaCha stream `u64::MAX` of `seed`; shot `i` of the run
/// uses substream `(seed, i)`.
pub fn shor_driver(config: &DriverConfig) -> Result<FactorReport, ShorError> {
    let n = config.modulus;
    if n != MODULUS {
        return Err(ShorError::UnsupportedModulus(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(u64::MAX);
    let mut circuits: BTreeMap<u64, Subroutine> = BTreeMap::new();
    let mut report = FactorReport {
        modulus: n,
        a: None,
        m: None,
        r: None,
        factors: BTreeSet::new(),
        invocations: 0,
        seed: config.seed,
        attempts: Vec::new(),
    };

    loop {
        let a = rng.random_range(2..=n - 2);
        report.a = Some(a);
        let g = a.gcd(&n);
        if g > 1 {
            report.factors = with_cofactors(BTreeSet::from([g]), n);
            report.attempts.push(Attempt {
                a,
                gcd: Some(g),
                m: None,
                r: None,
                factors: report.factors.clone(),
            });
            return Ok(report);
        }
        if report.invocations >= config.max_retries {
            report.attempts.push(Attempt {
                a,
                gcd: None,
                m: None,
                r: None,
                factors: BTreeSet::new(),
            });
            report.m = None;
            report.r = None;
            return Ok(report);
        }

        let params = ShorParams::new(a)?;
        let sub = match circuits.entry(a) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(build_subroutine(&params)?),
        };
        let m = sub.run_shot(config.seed, report.invocations as u64);
        report.invocations += 1;
        let r = continued_fraction_order(m, params.outcome_space(), n);
        let found = r
            .and_then(|r| factor_from_order(a, r, n))
            .map(|f| with_cofactors(f, n))
            .unwrap_or_default();
        report.m = Some(m);
        report.r = r;
        report.attempts.push(Attempt {
            a,
            gcd: None,
            m: Some(m),
            r,
            factors: found.clone(),
        });
        if !found.is_empty() {
            debug_assert!(found.iter().all(|&f| f > 1 && f < n && n.is_multiple_of(f)));
            report.factors = found;
            return Ok(report);
        }
    }
}

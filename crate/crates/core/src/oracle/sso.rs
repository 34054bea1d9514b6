use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution as _};
use serde::{Deserialize, Serialize};

use crate::engine::Histogram;

use super::{Distribution, OracleError};

/// `(Σ_j √(p_j·q_j))²`, the squared Bhattacharyya coefficient, clamped to `[0, 1]`.
pub fn square_statistical_overlap(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "outcome spaces differ");
    let bc: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    (bc * bc).clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BootstrapOptions {
    pub replicates: usize,
    pub seed: u64,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        Self {
            replicates: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SsoResult {
    pub sso: f64,
    /// One standard deviation over the bootstrap replicates.
    pub stderr: f64,
    pub shots: u64,
    pub replicates: usize,
}

/// SSO of a sampled histogram against an ideal distribution. The error bar
/// comes from a multinomial bootstrap of the observed counts.
pub fn sso(
    empirical: &Histogram,
    ideal: &Distribution,
    boot: &BootstrapOptions,
) -> Result<SsoResult, OracleError> {
    if empirical.shots() == 0 {
        return Err(OracleError::EmptyHistogram);
    }
    let freqs = empirical.frequencies();
    if freqs.len() != ideal.probs().len() {
        return Err(OracleError::OutcomeSpace(freqs.len(), ideal.probs().len()));
    }
    let value = square_statistical_overlap(&freqs, ideal.probs());

    let mut rng = ChaCha8Rng::seed_from_u64(boot.seed);
    let shots = empirical.shots();
    let observed: Vec<(u64, u64)> = empirical.counts().iter().map(|(&m, &n)| (m, n)).collect();
    let mut replicate = vec![0.0; freqs.len()];
    let samples: Vec<f64> = (0..boot.replicates)
        .map(|_| {
            replicate.iter_mut().for_each(|f| *f = 0.0);
            // multinomial draw as a chain of conditional binomials
            let mut left = shots;
            let mut mass = shots;
            for &(m, n) in &observed {
                if left == 0 {
                    break;
                }
                let p = (n as f64 / mass as f64).min(1.0);
                let k = Binomial::new(left, p).expect("p in [0, 1]").sample(&mut rng);
                replicate[m as usize] = k as f64 / shots as f64;
                left -= k;
                mass -= n;
            }
            square_statistical_overlap(&replicate, ideal.probs())
        })
        .collect();
    let stderr = if samples.len() > 1 {
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>()
            / (samples.len() - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };
    Ok(SsoResult {
        sso: value,
        stderr,
        shots,
        replicates: boot.replicates,
    })
}

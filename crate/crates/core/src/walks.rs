//! Random-walk reading of `S_n(a)`: with `K` drawn from `P(K=k) ∝ a^k` and
//! two independent simple walks `X`, `Y`,
//!
//! ```text
//! S_n(a) = 4^n (sum_j a^j) E[ 1{X_{2K} = 0} 1{Y_{2(n-K)} = 0} ]
//! ```
//!
//! Sampling is split into fixed-size blocks. Block `b` draws from the ChaCha
//! stream `(seed, b)`, and blocks only contribute integer tallies, so the
//! estimate is bit-identical however the blocks are grouped into chunks.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{central_binomial, int_pow, Int, Rat};

const BLOCK_SAMPLES: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("parameter a = {0} must be positive")]
    NonPositiveParameter(Rat),
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("chunks must be at least 1")]
    NoChunks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkConfig {
    pub n: u64,
    pub a: Rat,
    pub samples: u64,
    pub seed: u64,
    pub chunks: u32,
}

impl WalkConfig {
    pub fn validate(&self) -> Result<(), WalkError> {
        if !self.a.is_positive() {
            return Err(WalkError::NonPositiveParameter(self.a.clone()));
        }
        if self.samples == 0 {
            return Err(WalkError::NoSamples);
        }
        if self.chunks == 0 {
            return Err(WalkError::NoChunks);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// `P(X_{2k} = 0) = C(2k,k) / 4^k`.
pub fn return_prob_exact(k: u64) -> Rat {
    Rat::new(central_binomial(k), Int::from(1) << (2 * k))
}

/// Simulates `2k` fair ±1 steps and reports whether the walk ends at 0.
pub fn simulate_return<R: RngCore + ?Sized>(k: u64, rng: &mut R) -> bool {
    // Ends at 0 iff exactly k of the 2k steps are up.
    let mut remaining = 2 * k;
    let mut ups = 0u64;
    while remaining > 0 {
        let take = remaining.min(64);
        let word = rng.next_u64();
        let mask = if take == 64 {
            u64::MAX
        } else {
            (1u64 << take) - 1
        };
        ups += (word & mask).count_ones() as u64;
        remaining -= take;
    }
    ups == k
}

/// Inverse-CDF sampler for `P(K = k) = a^k / sum_j a^j`, `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct KSampler {
    cdf: Vec<f64>,
}

impl KSampler {
    pub fn new(n: u64, a: &Rat) -> Result<Self, WalkError> {
        if !a.is_positive() {
            return Err(WalkError::NonPositiveParameter(a.clone()));
        }
        let mut partial = Vec::with_capacity(n as usize + 1);
        let mut power = Rat::one();
        let mut running = Rat::zero();
        for _ in 0..=n {
            running = running + &power;
            partial.push(running.clone());
            power = power * a;
        }
        let total = running;
        let mut cdf: Vec<f64> = partial.iter().map(|c| (c / &total).to_f64()).collect();
        *cdf.last_mut().expect("n + 1 entries") = 1.0;
        Ok(KSampler { cdf })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c <= u) as u64
    }
}

pub fn sample_k<R: Rng + ?Sized>(n: u64, a: &Rat, rng: &mut R) -> Result<u64, WalkError> {
    Ok(KSampler::new(n, a)?.sample(rng))
}

/// `4^n * sum_{j=0}^{n} a^j`, exact.
fn scale_factor(n: u64, a: &Rat) -> Rat {
    let mut power = Rat::one();
    let mut sum = Rat::zero();
    for _ in 0..=n {
        sum = sum + &power;
        power = power * a;
    }
    Rat::from_int(int_pow(&Int::from(4), n)) * sum
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `per_sample` for every draw of every block, grouped into `chunks` contiguous
/// ranges processed in parallel, and adds up the per-block tallies.
fn tally_blocks<F>(cfg: &WalkConfig, width: usize, per_sample: F) -> Vec<u64>
where
    F: Fn(&mut ChaCha8Rng, &mut [u64]) + Sync,
{
    let blocks = cfg.samples.div_ceil(BLOCK_SAMPLES);
    let chunks = (cfg.chunks as u64).min(blocks).max(1);
    let per_chunk = blocks.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = vec![0u64; width];
            for b in (c * per_chunk)..((c + 1) * per_chunk).min(blocks) {
                let draws = BLOCK_SAMPLES.min(cfg.samples - b * BLOCK_SAMPLES);
                let mut rng = block_rng(cfg.seed, b);
                for _ in 0..draws {
                    per_sample(&mut rng, &mut tally);
                }
            }
            tally
        })
        .reduce(
            || vec![0u64; width],
            |mut acc, t| {
                acc.iter_mut().zip(t).for_each(|(x, y)| *x += y);
                acc
            },
        )
}

/// Mean and standard error of a sample whose values are `values[i]` with
/// multiplicity `counts[i]`.
fn summarize(values: &[f64], counts: &[u64], cfg: &WalkConfig) -> McEstimate {
    let total = cfg.samples as f64;
    let mean = values
        .iter()
        .zip(counts)
        .map(|(v, &c)| v * c as f64)
        .sum::<f64>()
        / total;
    let std_error = if cfg.samples > 1 {
        let ss: f64 = values
            .iter()
            .zip(counts)
            .map(|(v, &c)| c as f64 * (v - mean) * (v - mean))
            .sum();
        (ss / (total - 1.0)).sqrt() / total.sqrt()
    } else {
        0.0
    };
    McEstimate {
        mean,
        std_error,
        samples: cfg.samples,
        seed: cfg.seed,
    }
}

/// Plain estimator: simulate both walks and average the scaled indicator.
pub fn estimate_s(cfg: &WalkConfig) -> Result<McEstimate, WalkError> {
    cfg.validate()?;
    let n = cfg.n;
    let sampler = KSampler::new(n, &cfg.a)?;
    let scale = scale_factor(n, &cfg.a).to_f64();
    // tally[0] = misses, tally[1] = both walks returned
    let tally = tally_blocks(cfg, 2, |rng, tally| {
        let k = sampler.sample(rng);
        let hit = simulate_return(k, rng) && simulate_return(n - k, rng);
        tally[hit as usize] += 1;
    });
    Ok(summarize(&[0.0, scale], &tally, cfg))
}

/// Rao-Blackwellized estimator: only `K` is random; the walk indicators are
/// replaced by their exact return probabilities.
pub fn estimate_s_rao(cfg: &WalkConfig) -> Result<McEstimate, WalkError> {
    cfg.validate()?;
    let n = cfg.n;
    let sampler = KSampler::new(n, &cfg.a)?;
    let scale = scale_factor(n, &cfg.a);
    let values: Vec<f64> = (0..=n)
        .map(|k| (&scale * return_prob_exact(k) * return_prob_exact(n - k)).to_f64())
        .collect();
    let tally = tally_blocks(cfg, n as usize + 1, |rng, tally| {
        tally[sampler.sample(rng) as usize] += 1;
    });
    Ok(summarize(&values, &tally, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::s_direct;
    use crate::exactnum::binomial;

    fn cfg(n: u64, a: &str, samples: u64, seed: u64, chunks: u32) -> WalkConfig {
        WalkConfig {
            n,
            a: a.parse().unwrap(),
            samples,
            seed,
            chunks,
        }
    }

    #[test]
    fn return_probabilities() {
        assert_eq!(return_prob_exact(0), Rat::one());
        assert_eq!(return_prob_exact(1), Rat::from_frac(1, 2));
        assert_eq!(return_prob_exact(2), Rat::from_frac(3, 8));
        for k in 0..=100u64 {
            let scaled = return_prob_exact(k) * Rat::from_int(int_pow(&Int::from(4), k));
            assert_eq!(scaled, Rat::from_int(binomial(2 * k, k as i64)));
        }
    }

    #[test]
    fn simulated_return_rates() {
        let mut rng = block_rng(11, 0);
        assert!((0..100).all(|_| simulate_return(0, &mut rng)));
        let trials = 1_000_000u64;
        for (k, p) in [(1u64, 0.5), (2, 0.375)] {
            let hits = (0..trials).filter(|_| simulate_return(k, &mut rng)).count() as f64;
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            assert!((hits / trials as f64 - p).abs() < 5.0 * se, "k={k}");
        }
        // walks longer than one 64-bit word
        let p = return_prob_exact(40).to_f64();
        let hits = (0..200_000)
            .filter(|_| simulate_return(40, &mut rng))
            .count() as f64;
        let se = (p * (1.0 - p) / 200_000.0).sqrt();
        assert!((hits / 200_000.0 - p).abs() < 5.0 * se);
    }

    #[test]
    fn k_sampler_distribution() {
        let mut rng = block_rng(3, 0);
        assert!((0..100).all(|_| sample_k(0, &Rat::from(5), &mut rng).unwrap() == 0));
        assert!(sample_k(3, &Rat::zero(), &mut rng).is_err());

        let draws = 1_000_000u64;
        let sampler = KSampler::new(2, &Rat::from(2)).unwrap();
        let mut counts = [0u64; 3];
        for _ in 0..draws {
            counts[sampler.sample(&mut rng) as usize] += 1;
        }
        for (c, p) in counts.iter().zip([1.0 / 7.0, 2.0 / 7.0, 4.0 / 7.0]) {
            let se = (p * (1.0 - p) / draws as f64).sqrt();
            assert!((*c as f64 / draws as f64 - p).abs() < 5.0 * se);
        }
    }

    #[test]
    fn uniform_k_passes_chi_square() {
        let mut rng = block_rng(99, 0);
        let sampler = KSampler::new(10, &Rat::one()).unwrap();
        let draws = 1_000_000u64;
        let mut counts = [0u64; 11];
        for _ in 0..draws {
            counts[sampler.sample(&mut rng) as usize] += 1;
        }
        let expected = draws as f64 / 11.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square with 10 degrees of freedom, upper 0.001 quantile
        assert!(chi2 < 29.588, "chi2 = {chi2}");
    }

    #[test]
    fn trivial_length_is_exact() {
        for est in [
            estimate_s(&cfg(0, "2", 100, 7, 1)).unwrap(),
            estimate_s_rao(&cfg(0, "2", 100, 7, 1)).unwrap(),
        ] {
            assert_eq!(est.mean, 1.0);
            assert_eq!(est.std_error, 0.0);
        }
    }

    #[test]
    fn invalid_configs() {
        assert_eq!(
            estimate_s(&cfg(2, "0", 10, 1, 1)),
            Err(WalkError::NonPositiveParameter(Rat::zero()))
        );
        assert_eq!(
            estimate_s(&cfg(2, "-1/2", 10, 1, 1)).unwrap_err(),
            WalkError::NonPositiveParameter(Rat::from_frac(-1, 2))
        );
        assert_eq!(
            estimate_s_rao(&cfg(2, "1", 0, 1, 1)),
            Err(WalkError::NoSamples)
        );
        assert_eq!(estimate_s(&cfg(2, "1", 10, 1, 0)), Err(WalkError::NoChunks));
    }

    #[test]
    fn chunking_does_not_change_results() {
        let base = cfg(5, "3/2", 100_000, 2024, 1);
        let plain = estimate_s(&base).unwrap();
        let rao = estimate_s_rao(&base).unwrap();
        for chunks in [2, 3, 7, 64] {
            let c = WalkConfig {
                chunks,
                ..base.clone()
            };
            assert_eq!(estimate_s(&c).unwrap(), plain);
            assert_eq!(estimate_s_rao(&c).unwrap(), rao);
        }
        let other_seed = WalkConfig { seed: 2025, ..base };
        assert_ne!(estimate_s(&other_seed).unwrap(), plain);
    }

    #[test]
    fn rao_blackwell_estimate_is_close() {
        let c = cfg(6, "3/2", 200_000, 5, 4);
        let exact = s_direct(6, &Rat::from_frac(3, 2)).to_f64();
        let est = estimate_s_rao(&c).unwrap();
        assert!((est.mean - exact).abs() < 5.0 * est.std_error);
        assert!(est.std_error < estimate_s(&c).unwrap().std_error);
    }
}

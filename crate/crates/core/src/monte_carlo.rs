//! Monte Carlo simulator of the physical misalignment model.
//!
//! Each sample draws a Rayleigh radial displacement (inverse CDF), maps it to
//! the collected power fraction `A0 · exp(-2 r² / w_eq²)`, and evaluates the
//! instantaneous SNR.
//!
//! Samples are grouped in fixed blocks of [`BLOCK_LEN`]; block `k` draws from
//! ChaCha12 seeded with `seed` on stream `k`. Blocks are reduced independently
//! (in parallel over `n_streams` worker threads) and merged in block order, so
//! an estimate depends only on `(seed, n_samples)`, never on the worker count
//! or on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::channel::MisalignmentParams;
use crate::error::{Error, Result};
use crate::link_metrics::DetectionScheme;
use crate::noise_snr::SnrScale;

/// Samples per substream block.
pub const BLOCK_LEN: u64 = 1 << 16;

/// Identifies the generator and substream layout; recorded in reports.
pub const RNG_DESCRIPTION: &str =
    "ChaCha12 (rand_chacha 0.9) seed_from_u64(seed), stream = block index, 65536 samples/block";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
    /// Worker threads used to reduce blocks.
    pub n_streams: usize,
}

impl McConfig {
    pub fn new(n_samples: u64, seed: u64, n_streams: usize) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::invalid("samples", "must be >= 1"));
        }
        if n_streams == 0 {
            return Err(Error::invalid("streams", "must be >= 1"));
        }
        Ok(Self {
            n_samples,
            seed,
            n_streams,
        })
    }

    pub fn n_blocks(&self) -> u64 {
        self.n_samples.div_ceil(BLOCK_LEN)
    }

    fn block_len(&self, block: u64) -> u64 {
        BLOCK_LEN.min(self.n_samples - block * BLOCK_LEN)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√n`.
    pub std_error: f64,
    pub n: u64,
}

impl McEstimate {
    /// Distance from `reference` in standard errors (0 when both agree exactly).
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = (self.mean - reference).abs();
        if diff == 0.0 {
            0.0
        } else if self.std_error == 0.0 {
            f64::INFINITY
        } else {
            diff / self.std_error
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McMetrics {
    pub avg_snr: McEstimate,
    pub outage: McEstimate,
    /// Spectral efficiency `½ log₂(1 + ψγ)` [bits/channel use].
    pub se: McEstimate,
}

/// The generator for one substream block.
pub fn block_rng(seed: u64, block: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Rayleigh radial displacement with scale `sigma_s`, by inverse CDF.
pub fn sample_radial<R: Rng + ?Sized>(sigma_s: f64, rng: &mut R) -> f64 {
    // u in (0, 1]
    let u = 1.0 - rng.random::<f64>();
    sigma_s * (-2.0 * u.ln()).sqrt()
}

/// Collected power fraction at radial displacement `r`.
pub fn sample_hp(params: &MisalignmentParams, r: f64) -> f64 {
    params.a0 * (-2.0 * r * r / params.w_eq_sq).exp()
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Streaming first/second moments: compensated sum for the mean, Welford/Chan
/// for the spread.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    sum: CompensatedSum,
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum.add(x);
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        self.m2 += other.m2 + delta * delta * (self.n as f64) * (other.n as f64) / n as f64;
        self.mean += delta * other.n as f64 / n as f64;
        self.n = n;
        self.sum.merge(&other.sum);
    }

    fn estimate(&self) -> McEstimate {
        let n = self.n as f64;
        let std_error = if self.n > 1 {
            (self.m2.max(0.0) / (n - 1.0)).sqrt() / n.sqrt()
        } else {
            0.0
        };
        McEstimate {
            mean: self.sum.value() / n,
            std_error,
            n: self.n,
        }
    }
}

/// Runs `per_sample` over every sample of `cfg` and returns one estimate per
/// output component.
pub fn estimate_means<const K: usize, F>(cfg: &McConfig, per_sample: F) -> Result<[McEstimate; K]>
where
    F: Fn(&mut ChaCha12Rng) -> [f64; K] + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.n_streams)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let blocks: Vec<[Moments; K]> = pool.install(|| {
        (0..cfg.n_blocks())
            .into_par_iter()
            .map(|block| {
                let mut rng = block_rng(cfg.seed, block);
                let mut acc = [Moments::default(); K];
                for _ in 0..cfg.block_len(block) {
                    let values = per_sample(&mut rng);
                    for (m, v) in acc.iter_mut().zip(values) {
                        m.push(v);
                    }
                }
                acc
            })
            .collect()
    });
    let mut total = [Moments::default(); K];
    for block in &blocks {
        for (t, b) in total.iter_mut().zip(block) {
            t.merge(b);
        }
    }
    Ok(total.map(|m| m.estimate()))
}

/// Empirical average SNR, outage probability at `gamma_th`, and ergodic
/// spectral efficiency.
pub fn estimate_metrics(
    cfg: &McConfig,
    params: &MisalignmentParams,
    scale: &SnrScale,
    scheme: DetectionScheme,
    gamma_th: f64,
) -> Result<McMetrics> {
    let psi = scheme.psi();
    let [avg_snr, outage, se] = estimate_means(cfg, |rng| {
        let r = sample_radial(params.sigma_s, rng);
        let gamma = scale.snr(sample_hp(params, r));
        let outage = if gamma <= gamma_th { 1.0 } else { 0.0 };
        [
            gamma,
            outage,
            0.5 * (psi * gamma).ln_1p() / std::f64::consts::LN_2,
        ]
    })?;
    Ok(McMetrics {
        avg_snr,
        outage,
        se,
    })
}

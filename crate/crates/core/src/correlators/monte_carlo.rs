use rayon::prelude::*;
use serde::Serialize;

use crate::error::ModelError;
use crate::geometry::stream;
use crate::models::{joint, sample_hidden, sample_outcomes, ModelParams, Settings};

pub const MIN_SAMPLES: u64 = 100;

/// Sample mean of στ with its plug-in standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

impl MCEstimate {
    /// |mean − reference| in units of stderr.
    pub fn z_score(&self, reference: f64) -> f64 {
        let d = (self.mean - reference).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }

    pub fn within(&self, reference: f64, sigmas: f64) -> bool {
        (self.mean - reference).abs() <= sigmas * self.stderr
    }
}

/// Estimates ⟨στ⟩ by sampling λ ~ ρ and then (σ, τ) from the joint table.
///
/// The `n` draws are split over `shards` substreams of `seed`. Each shard
/// counts its anticorrelated events, and integer counts sum exactly, so the
/// result depends only on `(seed, shards, n)`.
pub fn mc_correlator(
    params: &ModelParams,
    s: &Settings,
    n: u64,
    seed: u64,
    shards: u64,
) -> Result<MCEstimate, ModelError> {
    if n < MIN_SAMPLES {
        return Err(ModelError::SampleSize(n, MIN_SAMPLES));
    }
    let shards = shards.clamp(1, n);
    let per = n / shards;
    let extra = n % shards;
    let counts: Vec<u64> = (0..shards)
        .into_par_iter()
        .map(|i| {
            let len = per + u64::from(i < extra);
            let mut rng = stream(seed, i);
            let mut agree = 0u64;
            for _ in 0..len {
                let h = sample_hidden(params, &mut rng);
                let t = joint(params, &h, s)?;
                let (sg, tg) = sample_outcomes(&t, &mut rng);
                if sg == tg {
                    agree += 1;
                }
            }
            Ok(agree)
        })
        .collect::<Result<_, ModelError>>()?;
    let agree: u64 = counts.iter().sum();
    let nf = n as f64;
    let mean = (2.0 * agree as f64 - nf) / nf;
    // στ = ±1, so the sample variance is n/(n−1)·(1 − mean²)
    let var = (nf / (nf - 1.0)) * (1.0 - mean * mean).max(0.0);
    Ok(MCEstimate { mean, stderr: (var / nf).sqrt(), n, seed })
}

use rand::Rng;
use rayon::prelude::*;

use super::fitness::abe;
use super::rng::{stream, StreamTag};
use super::sampler::Deformer;
use super::train::{Candidate, Origin};
use crate::circuit::{ArchitectureSpec, Network, Resistance, Rset};
use crate::codes::extract_main_codes;
use crate::error::{Error, Result, Stage};
use crate::imaging::GlyphSet;
use crate::scalar::Scalar;

/// Resistance bounds; random values are log-uniform between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueRange<T> {
    pub min: T,
    pub max: T,
}

impl<T: Scalar> ValueRange<T> {
    pub fn new(min: T, max: T) -> Result<Self> {
        if !(min > T::zero() && min < max && max.is_finite()) {
            return Err(Error::Config(format!(
                "resistance range needs 0 < min < max, got [{min}, {max}]"
            )));
        }
        Ok(ValueRange { min, max })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Resistance<T> {
        let (lo, hi) = (self.min.as_f64().ln(), self.max.as_f64().ln());
        let v = T::of((lo + rng.random::<f64>() * (hi - lo)).exp());
        Resistance::new(v.max(self.min).min(self.max)).expect("in-range value is valid")
    }

    pub fn contains(&self, r: Resistance<T>) -> bool {
        r.value() >= self.min && r.value() <= self.max
    }
}

impl Default for ValueRange<f64> {
    fn default() -> Self {
        ValueRange { min: 1.0, max: 1e4 }
    }
}

/// Every resistor i.i.d. log-uniform over the range.
pub fn random_rset<T: Scalar, R: Rng + ?Sized>(
    arch: &ArchitectureSpec<T>,
    range: &ValueRange<T>,
    rng: &mut R,
) -> Rset<T> {
    Rset::new((0..arch.rset_len()).map(|_| range.sample(rng)).collect())
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelectionConfig {
    /// Rsets with unique codes to collect before ranking.
    pub pool_target: usize,
    pub keep: usize,
    /// Salt-and-pepper probability used to rank the pool.
    pub noise_p: f64,
    pub trials_per_char: usize,
    /// Maximum number of random Rsets drawn.
    pub sample_cap: usize,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            pool_target: 400,
            keep: 5,
            noise_p: 0.12,
            trials_per_char: 4,
            sample_cap: 5_000_000,
        }
    }
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pool_target == 0 || self.keep == 0 || self.keep > self.pool_target {
            return Err(Error::Config(format!(
                "selection: need 1 <= keep ({}) <= pool_target ({})",
                self.keep, self.pool_target
            )));
        }
        if self.sample_cap < self.pool_target {
            return Err(Error::Config(format!(
                "selection: sample_cap ({}) below pool_target ({})",
                self.sample_cap, self.pool_target
            )));
        }
        if !(0.0..=1.0).contains(&self.noise_p) {
            return Err(Error::Config(format!(
                "selection: noise_p {} outside [0, 1]",
                self.noise_p
            )));
        }
        if self.trials_per_char == 0 {
            return Err(Error::Config(
                "selection: trials_per_char must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

const DRAW_CHUNK: usize = 512;

/// Draws random Rsets until `pool_target` give 26 distinct main codes, ranks
/// that pool by ABE under salt-and-pepper noise and keeps the best `keep`.
pub fn selection_stage<T: Scalar>(
    arch: &ArchitectureSpec<T>,
    range: &ValueRange<T>,
    glyphs: &GlyphSet,
    cfg: &SelectionConfig,
    seed: u64,
) -> Result<Vec<Candidate<T>>> {
    cfg.validate()?;
    let mut pool = Vec::with_capacity(cfg.pool_target);
    let mut drawn = 0;
    while pool.len() < cfg.pool_target && drawn < cfg.sample_cap {
        let end = (drawn + DRAW_CHUNK).min(cfg.sample_cap);
        let passing: Vec<_> = (drawn..end)
            .into_par_iter()
            .map(|i| -> Result<Option<_>> {
                let mut rng = stream(seed, StreamTag::SelectionDraw, i as u64);
                let net = Network::new(arch.clone(), random_rset(arch, range, &mut rng))?;
                let cb = extract_main_codes(&net, glyphs)?;
                Ok(cb.all_unique().then_some((i, net, cb)))
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, net, cb) in passing.into_iter().flatten() {
            if pool.len() == cfg.pool_target {
                break;
            }
            drawn = i + 1;
            pool.push((i, net, cb));
        }
        if pool.len() < cfg.pool_target {
            drawn = end;
        }
    }
    if pool.len() < cfg.pool_target {
        return Err(Error::SelectionStarvation {
            drawn,
            passed: pool.len(),
            target: cfg.pool_target,
            rate: pool.len() as f64 / drawn.max(1) as f64,
        });
    }

    let deformer = Deformer::SaltPepper(cfg.noise_p);
    let mut ranked = pool
        .into_par_iter()
        .map(|(i, net, cb)| {
            let mut rng = stream(seed, StreamTag::SelectionAbe, i as u64);
            let score = abe(&net, glyphs, &cb, &deformer, cfg.trials_per_char, &mut rng)?;
            Ok(Candidate {
                rset: net.into_rset(),
                abe: score,
                codebook: cb,
                origin: Origin {
                    stage: Stage::Selection,
                    index: i,
                    parents: None,
                    crossover: None,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| {
        a.abe
            .total_cmp(&b.abe)
            .then(a.origin.index.cmp(&b.origin.index))
    });
    ranked.truncate(cfg.keep);
    Ok(ranked)
}

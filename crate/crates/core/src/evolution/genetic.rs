use rand::Rng;
use rayon::prelude::*;

use super::fitness::abe;
use super::rng::{stream, StreamTag};
use super::sampler::Deformer;
use super::train::{Candidate, Origin};
use crate::circuit::{ArchitectureSpec, Network, Rset};
use crate::codes::extract_main_codes;
use crate::error::{Error, Result, Stage};
use crate::imaging::GlyphSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeneticConfig {
    pub offspring: usize,
    pub keep: usize,
    /// Generations to run; each one breeds from the previous survivors.
    pub generations: usize,
}

impl Default for GeneticConfig {
    fn default() -> Self {
        GeneticConfig {
            offspring: 800,
            keep: 5,
            generations: 1,
        }
    }
}

impl GeneticConfig {
    pub fn validate(&self) -> Result<()> {
        if self.keep == 0 || self.keep > self.offspring {
            return Err(Error::Config(format!(
                "genetic: need 1 <= keep ({}) <= offspring ({})",
                self.keep, self.offspring
            )));
        }
        if self.generations == 0 {
            return Err(Error::Config("genetic: generations must be >= 1".into()));
        }
        Ok(())
    }
}

/// Two crossover points `i <= j`, each uniform on `[0, len]`.
pub fn crossover_points<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.random_range(0..=len);
    let b = rng.random_range(0..=len);
    (a.min(b), a.max(b))
}

/// `a[0..i) ++ b[i..j) ++ a[j..)`.
pub fn two_point_crossover_at<T: Scalar>(
    a: &Rset<T>,
    b: &Rset<T>,
    i: usize,
    j: usize,
) -> Result<Rset<T>> {
    if a.len() != b.len() {
        return Err(Error::Contract(format!(
            "crossover parents differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if i > j || j > a.len() {
        return Err(Error::Contract(format!(
            "crossover points ({i}, {j}) invalid for length {}",
            a.len()
        )));
    }
    let mut values = a.values().to_vec();
    values[i..j].copy_from_slice(&b.values()[i..j]);
    Ok(Rset::new(values))
}

/// Two random crossover points, no mutation.
pub fn two_point_crossover<T: Scalar, R: Rng + ?Sized>(
    a: &Rset<T>,
    b: &Rset<T>,
    rng: &mut R,
) -> Result<Rset<T>> {
    let (i, j) = crossover_points(a.len(), rng);
    two_point_crossover_at(a, b, i, j)
}

/// Breeds `offspring` children from ordered parent pairs and keeps the
/// `keep` lowest-ABE children. Parents do not compete with their children.
/// Children whose main codes collide rank after all children with unique codes.
pub fn genetic_stage<T: Scalar>(
    parents: &[Candidate<T>],
    arch: &ArchitectureSpec<T>,
    glyphs: &GlyphSet,
    cfg: &GeneticConfig,
    noise_p: f64,
    trials_per_char: usize,
    seed: u64,
) -> Result<Vec<Candidate<T>>> {
    cfg.validate()?;
    if parents.is_empty() {
        return Err(Error::Contract(
            "genetic stage needs at least one parent".into(),
        ));
    }
    if parents.iter().any(|p| p.rset.len() != arch.rset_len()) {
        return Err(Error::Contract(
            "parent genome length does not match architecture".into(),
        ));
    }
    let deformer = Deformer::SaltPepper(noise_p);
    let mut current = parents.to_vec();
    for generation in 0..cfg.generations {
        let n = current.len();
        let mut children = (0..cfg.offspring)
            .into_par_iter()
            .map(|i| {
                let index = (generation * cfg.offspring + i) as u64;
                let mut rng = stream(seed, StreamTag::Genetic, index);
                let pa = rng.random_range(0..n);
                let pb = if n > 1 {
                    let x = rng.random_range(0..n - 1);
                    if x >= pa {
                        x + 1
                    } else {
                        x
                    }
                } else {
                    pa
                };
                let (ci, cj) = crossover_points(arch.rset_len(), &mut rng);
                let rset = two_point_crossover_at(&current[pa].rset, &current[pb].rset, ci, cj)?;
                let net = Network::new(arch.clone(), rset)?;
                let cb = extract_main_codes(&net, glyphs)?;
                let score = abe(&net, glyphs, &cb, &deformer, trials_per_char, &mut rng)?;
                Ok(Candidate {
                    rset: net.into_rset(),
                    abe: score,
                    codebook: cb,
                    origin: Origin {
                        stage: Stage::Genetic,
                        index: i,
                        parents: Some((pa, pb)),
                        crossover: Some((ci, cj)),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        children.sort_by(|a, b| {
            (!a.codebook.all_unique())
                .cmp(&!b.codebook.all_unique())
                .then(a.abe.total_cmp(&b.abe))
                .then(a.origin.index.cmp(&b.origin.index))
        });
        children.truncate(cfg.keep);
        current = children;
    }
    Ok(current)
}

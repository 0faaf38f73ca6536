//! Localized refinement: resample resistors in the trees of the worst output
//! bits until the network is immune to the training deformations.

use rand::Rng;

use super::fitness::SampleBatch;
use super::rng::{stream, StreamTag};
use super::sampler::{Composition, Deformer, RandomDeformer, SamplingMode};
use super::selection::ValueRange;
use super::train::Candidate;
use crate::circuit::{output_tree_gene_indices, ArchitectureSpec, Network};
use crate::codes::{min_pairwise_distance, Codebook};
use crate::error::{Error, Result};
use crate::imaging::{DeformOp, DeformationDistribution, GlyphSet, DEFAULT_ORDER};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RefineConfig {
    pub train_dist: DeformationDistribution,
    pub sampling: SamplingMode,
    pub composition: Composition,
    pub order: Vec<DeformOp>,
    /// Deformed samples per character in each move's acceptance batch.
    pub batch: usize,
    /// Chance that each gene of a selected tree is resampled in a move.
    pub resample_prob: f64,
    /// Consecutive zero-error batches required to declare immunity.
    pub immune_batches: usize,
    /// Samples per character in each immunity batch.
    pub immune_batch: usize,
    pub min_spacing: usize,
    pub max_iters: usize,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig {
            train_dist: DeformationDistribution::TRAINING,
            sampling: SamplingMode::TruncatedNormal,
            composition: Composition::Composed,
            order: DEFAULT_ORDER.to_vec(),
            batch: 4,
            resample_prob: 0.25,
            immune_batches: 3,
            immune_batch: 16,
            min_spacing: 3,
            max_iters: 20_000,
        }
    }
}

impl RefineConfig {
    pub fn validate(&self) -> Result<()> {
        self.train_dist.validate()?;
        if self.min_spacing == 0 {
            return Err(Error::Config("refine: min_spacing must be >= 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("refine: max_iters must be > 0".into()));
        }
        if self.batch == 0 || self.immune_batch == 0 || self.immune_batches == 0 {
            return Err(Error::Config(
                "refine: batch, immune_batch and immune_batches must be >= 1".into(),
            ));
        }
        if !(self.resample_prob > 0.0 && self.resample_prob <= 1.0) {
            return Err(Error::Config(format!(
                "refine: resample_prob {} outside (0, 1]",
                self.resample_prob
            )));
        }
        if self.order.is_empty() {
            return Err(Error::Config("refine: deformation order is empty".into()));
        }
        Ok(())
    }

    pub fn deformer(&self) -> Deformer {
        Deformer::Random(RandomDeformer {
            dist: self.train_dist,
            sampling: self.sampling,
            composition: self.composition,
            order: self.order.clone(),
            max_shift: None,
        })
    }
}

/// Progress notifications from [`refine_stage_observed`].
#[derive(Debug, Clone, PartialEq)]
pub enum RefineEvent<'a> {
    Move {
        iteration: usize,
        outputs: &'a [usize],
        changed_genes: &'a [usize],
        accepted: bool,
        abe_before: f64,
        abe_after: f64,
        spacing_before: usize,
        spacing_after: usize,
    },
    ImmunityCheck {
        iteration: usize,
        passed: bool,
        spacing: usize,
    },
}

#[derive(Debug, Clone)]
pub struct RefineOutcome<T> {
    pub candidate: Candidate<T>,
    pub converged: bool,
    pub iterations: usize,
    pub accepted_moves: usize,
    pub final_abe: f64,
    pub min_spacing: usize,
}

pub fn refine_stage<T: Scalar>(
    start: &Candidate<T>,
    arch: &ArchitectureSpec<T>,
    range: &ValueRange<T>,
    glyphs: &GlyphSet,
    cfg: &RefineConfig,
    seed: u64,
) -> Result<RefineOutcome<T>> {
    refine_stage_observed(start, arch, range, glyphs, cfg, seed, &mut |_| {})
}

fn spacing(codes: &Codebook) -> usize {
    min_pairwise_distance(codes.main_codes()).unwrap_or(0)
}

/// Each iteration measures per-output errors on a fresh batch, resamples
/// genes of the worst outputs' trees, and keeps the move when
/// `(errors, −spacing)` does not get lexicographically worse on the same
/// batch and spacing does not drop below `min(current, target)`.
///
/// Stops once a batch shows no errors, spacing meets the target, and
/// `immune_batches` further batches are also error free.
pub fn refine_stage_observed<T: Scalar>(
    start: &Candidate<T>,
    arch: &ArchitectureSpec<T>,
    range: &ValueRange<T>,
    glyphs: &GlyphSet,
    cfg: &RefineConfig,
    seed: u64,
    observer: &mut dyn FnMut(&RefineEvent<'_>),
) -> Result<RefineOutcome<T>> {
    cfg.validate()?;
    let deformer = cfg.deformer();
    let n_in = arch.n_inputs();
    let n_out = arch.n_outputs();
    let trees: Vec<Vec<usize>> = (0..n_out)
        .map(|k| output_tree_gene_indices(arch, k))
        .collect::<Result<_>>()?;
    let clean: Vec<Vec<bool>> = glyphs
        .bitmaps()
        .iter()
        .map(|b| b.pixels().to_vec())
        .collect();
    if clean.iter().any(|x| x.len() != n_in) {
        return Err(Error::Contract(
            "glyph size does not match architecture inputs".into(),
        ));
    }

    let mut net = Network::new(arch.clone(), start.rset.clone())?;
    let mut cb = crate::codes::extract_main_codes(&net, glyphs)?;
    let mut cur_spacing = spacing(&cb);
    let mut accepted_moves = 0;

    for iteration in 0..cfg.max_iters {
        let mut rng = stream(seed, StreamTag::Refine, iteration as u64);
        let mut batch = SampleBatch::draw(glyphs, n_in, &deformer, cfg.batch, &mut rng)?;
        let mut errs = batch.output_errors(&net, &cb);

        if errs.iter().all(|&e| e == 0) && cur_spacing >= cfg.min_spacing {
            let mut failed = None;
            for _ in 0..cfg.immune_batches {
                let check = SampleBatch::draw(glyphs, n_in, &deformer, cfg.immune_batch, &mut rng)?;
                let e = check.output_errors(&net, &cb);
                if e.iter().any(|&x| x > 0) {
                    failed = Some((check, e));
                    break;
                }
            }
            observer(&RefineEvent::ImmunityCheck {
                iteration,
                passed: failed.is_none(),
                spacing: cur_spacing,
            });
            match failed {
                None => {
                    return Ok(RefineOutcome {
                        candidate: Candidate {
                            rset: net.into_rset(),
                            abe: 0.0,
                            codebook: cb,
                            origin: start.origin.clone(),
                        },
                        converged: true,
                        iterations: iteration,
                        accepted_moves,
                        final_abe: 0.0,
                        min_spacing: cur_spacing,
                    });
                }
                // the failing batch becomes this move's acceptance batch
                Some((check, e)) => {
                    batch = check;
                    errs = e;
                }
            }
        }

        let worst = *errs.iter().max().expect("at least one output");
        let outputs: Vec<usize> = (0..n_out).filter(|&k| errs[k] == worst).collect();
        let mut rset = net.rset().clone();
        let mut changed = Vec::new();
        for &k in &outputs {
            for &g in &trees[k] {
                if rng.random_bool(cfg.resample_prob) {
                    rset.set(g, range.sample(&mut rng));
                    changed.push(g);
                }
            }
        }
        let total_before: usize = errs.iter().sum();
        let n = batch.len() as f64;
        if changed.is_empty() {
            observer(&RefineEvent::Move {
                iteration,
                outputs: &outputs,
                changed_genes: &changed,
                accepted: false,
                abe_before: total_before as f64 / n,
                abe_after: total_before as f64 / n,
                spacing_before: cur_spacing,
                spacing_after: cur_spacing,
            });
            continue;
        }

        let new_net = Network::new(arch.clone(), rset)?;
        let mut codes = cb.main_codes().to_vec();
        for &k in &outputs {
            for (code, x) in codes.iter_mut().zip(&clean) {
                code.set(k, new_net.eval_outputs(x, k..k + 1)[0]);
            }
        }
        let new_cb = Codebook::new(codes)?;
        let new_spacing = spacing(&new_cb);
        let mut new_errs = errs.clone();
        for &k in &outputs {
            new_errs[k] = batch.output_error(&new_net, &new_cb, k);
        }
        let total_after: usize = new_errs.iter().sum();

        let keeps_spacing = new_spacing >= cur_spacing.min(cfg.min_spacing);
        let not_worse = total_after < total_before
            || (total_after == total_before && new_spacing >= cur_spacing);
        let accepted = keeps_spacing && not_worse;
        observer(&RefineEvent::Move {
            iteration,
            outputs: &outputs,
            changed_genes: &changed,
            accepted,
            abe_before: total_before as f64 / n,
            abe_after: total_after as f64 / n,
            spacing_before: cur_spacing,
            spacing_after: new_spacing,
        });
        if accepted {
            net = new_net;
            cb = new_cb;
            cur_spacing = new_spacing;
            accepted_moves += 1;
        }
    }

    // not converged: report ABE of the final state on a fresh immunity-size batch
    let mut rng = stream(seed, StreamTag::RefineFinal, 0);
    let batch = SampleBatch::draw(glyphs, n_in, &deformer, cfg.immune_batch, &mut rng)?;
    let final_abe = batch.total_errors(&net, &cb) as f64 / batch.len() as f64;
    Ok(RefineOutcome {
        candidate: Candidate {
            rset: net.into_rset(),
            abe: final_abe,
            codebook: cb,
            origin: start.origin.clone(),
        },
        converged: false,
        iterations: cfg.max_iters,
        accepted_moves,
        final_abe,
        min_spacing: cur_spacing,
    })
}

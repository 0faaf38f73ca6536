use super::genetic::{genetic_stage, GeneticConfig};
use super::log::TrainingLog;
use super::refine::{refine_stage_observed, RefineConfig, RefineEvent};
use super::rng::{derive_seed, StreamTag};
use super::selection::{selection_stage, SelectionConfig, ValueRange};
use crate::circuit::{ArchitectureSpec, Network, Rset};
use crate::codes::Codebook;
use crate::error::{Result, Stage};
use crate::imaging::GlyphSet;
use crate::scalar::Scalar;

/// Where a candidate came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub stage: Stage,
    /// Draw index (selection) or child index (genetic).
    pub index: usize,
    /// Indices of the parents in the previous stage's output.
    pub parents: Option<(usize, usize)>,
    pub crossover: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct Candidate<T> {
    pub rset: Rset<T>,
    pub abe: f64,
    pub codebook: Codebook,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig<T> {
    pub range: ValueRange<T>,
    pub selection: SelectionConfig,
    pub genetic: GeneticConfig,
    pub refine: RefineConfig,
}

impl<T: Scalar> TrainConfig<T> {
    pub fn validate(&self) -> Result<()> {
        ValueRange::new(self.range.min, self.range.max)?;
        self.selection.validate()?;
        self.genetic.validate()?;
        self.refine.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingMeta<T> {
    pub seed: u64,
    /// Refinement iterations spent on the returned candidate.
    pub iterations: usize,
    pub final_abe: f64,
    pub converged: bool,
    pub range: ValueRange<T>,
}

/// A trained network; `codebook` is always the clean-glyph output of `rset`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel<T> {
    pub arch: ArchitectureSpec<T>,
    pub rset: Rset<T>,
    pub codebook: Codebook,
    pub meta: TrainingMeta<T>,
}

impl<T: Scalar> TrainedModel<T> {
    pub fn network(&self) -> Result<Network<T>> {
        Network::new(self.arch.clone(), self.rset.clone())
    }
}

pub fn train<T: Scalar>(
    arch: &ArchitectureSpec<T>,
    glyphs: &GlyphSet,
    cfg: &TrainConfig<T>,
    master_seed: u64,
) -> Result<TrainedModel<T>> {
    train_with_log(arch, glyphs, cfg, master_seed).map(|(m, _)| m)
}

/// Selection, then genetic, then refinement of each genetic survivor in rank
/// order. Returns the first refined candidate that converges, otherwise the
/// one with the lowest final ABE.
pub fn train_with_log<T: Scalar>(
    arch: &ArchitectureSpec<T>,
    glyphs: &GlyphSet,
    cfg: &TrainConfig<T>,
    master_seed: u64,
) -> Result<(TrainedModel<T>, TrainingLog)> {
    cfg.validate()?;
    let mut log = TrainingLog::default();

    let sel_seed = derive_seed(master_seed, StreamTag::Train, 0);
    let selected = selection_stage(arch, &cfg.range, glyphs, &cfg.selection, sel_seed)
        .map_err(|e| e.in_stage(Stage::Selection))?;
    for (rank, c) in selected.iter().enumerate() {
        let spacing = c.codebook.min_pairwise_distance().unwrap_or(0);
        log.push(Stage::Selection, rank, c.abe, spacing, sel_seed);
    }

    let gen_seed = derive_seed(master_seed, StreamTag::Train, 1);
    let bred = genetic_stage(
        &selected,
        arch,
        glyphs,
        &cfg.genetic,
        cfg.selection.noise_p,
        cfg.selection.trials_per_char,
        gen_seed,
    )
    .map_err(|e| e.in_stage(Stage::Genetic))?;
    for (rank, c) in bred.iter().enumerate() {
        let spacing = c.codebook.min_pairwise_distance().unwrap_or(0);
        log.push(Stage::Genetic, rank, c.abe, spacing, gen_seed);
    }

    let mut best: Option<(super::refine::RefineOutcome<T>, u64)> = None;
    for (i, start) in bred.iter().enumerate() {
        let seed = derive_seed(master_seed, StreamTag::Train, 2 + i as u64);
        let mut observer = |ev: &RefineEvent<'_>| match ev {
            RefineEvent::Move {
                iteration,
                accepted: true,
                abe_after,
                spacing_after,
                ..
            } => log.push(Stage::Refine, *iteration, *abe_after, *spacing_after, seed),
            RefineEvent::ImmunityCheck {
                iteration,
                passed: true,
                spacing,
            } => log.push(Stage::Refine, *iteration, 0.0, *spacing, seed),
            _ => {}
        };
        let outcome = refine_stage_observed(
            start,
            arch,
            &cfg.range,
            glyphs,
            &cfg.refine,
            seed,
            &mut observer,
        )
        .map_err(|e| e.in_stage(Stage::Refine))?;
        log.push(
            Stage::Refine,
            outcome.iterations,
            outcome.final_abe,
            outcome.min_spacing,
            seed,
        );
        let converged = outcome.converged;
        let better = match &best {
            None => true,
            Some((b, _)) => outcome.final_abe < b.final_abe,
        };
        if converged || better {
            best = Some((outcome, seed));
        }
        if converged {
            break;
        }
    }
    let (outcome, _) = best.expect("genetic stage keeps at least one candidate");
    let model = TrainedModel {
        arch: arch.clone(),
        rset: outcome.candidate.rset,
        codebook: outcome.candidate.codebook,
        meta: TrainingMeta {
            seed: master_seed,
            iterations: outcome.iterations,
            final_abe: outcome.final_abe,
            converged: outcome.converged,
            range: cfg.range,
        },
    };
    Ok((model, log))
}

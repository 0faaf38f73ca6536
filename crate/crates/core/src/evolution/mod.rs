//! Three-level evolutionary training: selection, genetic crossover and
//! localized refinement of the Rset.

mod fitness;
mod genetic;
mod log;
mod refine;
mod rng;
mod sampler;
mod selection;
mod train;

pub use fitness::{abe, per_output_bit_error, SampleBatch};
pub use genetic::{
    crossover_points, genetic_stage, two_point_crossover, two_point_crossover_at, GeneticConfig,
};
pub use log::{LogRecord, TrainingLog};
pub use refine::{refine_stage, refine_stage_observed, RefineConfig, RefineEvent, RefineOutcome};
pub use rng::{derive_seed, stream, StreamTag};
pub use sampler::{Composition, Deformer, RandomDeformer, SamplingMode};
pub use selection::{random_rset, selection_stage, SelectionConfig, ValueRange};
pub use train::{
    train, train_with_log, Candidate, Origin, TrainConfig, TrainedModel, TrainingMeta,
};

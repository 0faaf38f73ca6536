//! Test-protocol evaluation, fault injection and model persistence.

mod evaluate;
mod faults;
mod model_io;

pub use evaluate::{evaluate, evaluate_network, EvalReport, TestProtocol};
pub use faults::{fault_sweep, inject_faults, FaultKind, FaultModel, FaultSweep, SweepRow};
pub use model_io::{load_model, model_from_text, model_to_text, save_model, MODEL_VERSION};

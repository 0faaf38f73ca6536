//! Simulation and evolutionary training of a crossover-free, hierarchical
//! resistive memory network used as a printed-character recognizer.
//!
//! The network is a forest of threshold cells: every cell sums its inputs
//! through memory resistors into a node loaded by an output resistor, and an
//! inverter turns the node voltage into one bit. Resistor values (the Rset)
//! are found by a selection / genetic / refinement pipeline.
//!
//! Circuit math is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below are what the pipeline and CLI use.

pub mod circuit;
pub mod codes;
pub mod config;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod imaging;
pub mod netlist;
pub mod scalar;

pub use circuit::{ArchitectureSpec, CellParams, Network, Resistance, Rset};
pub use codes::{Code, Codebook};
pub use config::RunConfig;
pub use error::{Error, Result, Stage};
pub use evolution::{TrainConfig, TrainedModel};
pub use harness::{EvalReport, TestProtocol};
pub use imaging::{Bitmap, DeformationDistribution, DeformationParams, GlyphSet};
pub use netlist::Netlist;
pub use scalar::Scalar;

pub type Resistance64 = Resistance<f64>;
pub type CellParams64 = CellParams<f64>;
pub type ArchitectureSpec64 = ArchitectureSpec<f64>;
pub type Rset64 = Rset<f64>;
pub type Network64 = Network<f64>;
pub type TrainedModel64 = TrainedModel<f64>;
pub type Netlist64 = Netlist<f64>;

pub type Resistance32 = Resistance<f32>;
pub type CellParams32 = CellParams<f32>;
pub type ArchitectureSpec32 = ArchitectureSpec<f32>;
pub type Rset32 = Rset<f32>;
pub type Network32 = Network<f32>;
pub type TrainedModel32 = TrainedModel<f32>;
pub type Netlist32 = Netlist<f32>;

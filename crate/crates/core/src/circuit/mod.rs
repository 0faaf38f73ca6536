//! Resistive cells and the hierarchical, crossover-free network built from them.

mod arch;
mod cell;
mod network;
mod topology;

pub use arch::{layer_sizes, rset_len, ArchitectureSpec, Rset};
pub use cell::{cell_node_voltage, cell_output, CellParams, Resistance};
pub use network::{build_network, forward, Network};
pub use topology::{
    assert_no_crossover, check_wiring, output_tree_gene_indices, CellWiring, CrossoverReport,
    Violation, Wiring,
};

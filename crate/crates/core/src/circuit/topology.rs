//! Structural checks on the cell wiring.
//!
//! A wiring is crossover-free when every signal has exactly one sink and sink
//! indices never decrease as source indices increase. With fan-out 1 the
//! outputs then sit on vertex-disjoint trees.

use super::arch::ArchitectureSpec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellWiring {
    /// Indices into the previous layer's signals (primary inputs for layer 0).
    pub sources: Vec<usize>,
}

/// Explicit source lists for every cell of every layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wiring {
    pub n_inputs: usize,
    pub layers: Vec<Vec<CellWiring>>,
}

impl Wiring {
    /// The contiguous-block wiring used by [`crate::circuit::Network`].
    pub fn from_arch<T: Scalar>(arch: &ArchitectureSpec<T>) -> Self {
        let layers = (0..arch.n_layers())
            .map(|layer| {
                let fan = arch.fan_ins()[layer];
                (0..arch.layer_sizes()[layer])
                    .map(|cell| CellWiring {
                        sources: (cell * fan..(cell + 1) * fan).collect(),
                    })
                    .collect()
            })
            .collect();
        Wiring {
            n_inputs: arch.n_inputs(),
            layers,
        }
    }

    fn layer_input_width(&self, layer: usize) -> usize {
        if layer == 0 {
            self.n_inputs
        } else {
            self.layers[layer - 1].len()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A signal drives more than one cell.
    SharedSource {
        layer: usize,
        source: usize,
        sinks: Vec<usize>,
    },
    /// A signal drives nothing.
    Dangling { layer: usize, source: usize },
    /// A cell reads a signal that does not exist.
    SourceOutOfRange {
        layer: usize,
        cell: usize,
        source: usize,
    },
    /// Sink index decreases between consecutive sources: the wires cross.
    Crossing { layer: usize, source: usize },
    /// A cell is reachable from two output trees.
    TreesOverlap { layer: usize, cell: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossoverReport {
    /// Cells in each output tree, indexed by output.
    pub tree_cells: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl CrossoverReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_wiring(wiring: &Wiring) -> CrossoverReport {
    let mut violations = Vec::new();
    for (layer, cells) in wiring.layers.iter().enumerate() {
        let width = wiring.layer_input_width(layer);
        let mut sinks: Vec<Vec<usize>> = vec![Vec::new(); width];
        for (cell, w) in cells.iter().enumerate() {
            for &s in &w.sources {
                match sinks.get_mut(s) {
                    Some(list) => list.push(cell),
                    None => violations.push(Violation::SourceOutOfRange {
                        layer,
                        cell,
                        source: s,
                    }),
                }
            }
        }
        let mut last_sink = 0;
        for (source, list) in sinks.iter().enumerate() {
            match list.as_slice() {
                [] => violations.push(Violation::Dangling { layer, source }),
                [sink] => {
                    if *sink < last_sink {
                        violations.push(Violation::Crossing { layer, source });
                    }
                    last_sink = *sink;
                }
                _ => violations.push(Violation::SharedSource {
                    layer,
                    source,
                    sinks: list.clone(),
                }),
            }
        }
    }

    // walk each output tree back to the inputs
    let mut owner: Vec<Vec<Option<usize>>> =
        wiring.layers.iter().map(|l| vec![None; l.len()]).collect();
    let n_out = wiring.layers.last().map_or(0, Vec::len);
    let mut tree_cells = vec![0; n_out];
    for (out, count) in tree_cells.iter_mut().enumerate() {
        let mut frontier = vec![out];
        for layer in (0..wiring.layers.len()).rev() {
            let mut next = Vec::new();
            for cell in frontier {
                match owner[layer][cell] {
                    Some(o) if o != out => {
                        violations.push(Violation::TreesOverlap { layer, cell });
                        continue;
                    }
                    Some(_) => continue,
                    None => owner[layer][cell] = Some(out),
                }
                *count += 1;
                if layer > 0 {
                    next.extend(
                        wiring.layers[layer][cell]
                            .sources
                            .iter()
                            .copied()
                            .filter(|&s| s < wiring.layers[layer - 1].len()),
                    );
                }
            }
            frontier = next;
        }
    }
    CrossoverReport {
        tree_cells,
        violations,
    }
}

/// Structural crossover check of the wiring that `arch` implies.
pub fn assert_no_crossover<T: Scalar>(arch: &ArchitectureSpec<T>) -> CrossoverReport {
    check_wiring(&Wiring::from_arch(arch))
}

/// Rset positions of every resistor in the tree feeding output `output`.
/// Returned in ascending order.
pub fn output_tree_gene_indices<T: Scalar>(
    arch: &ArchitectureSpec<T>,
    output: usize,
) -> Result<Vec<usize>> {
    if output >= arch.n_outputs() {
        return Err(Error::Contract(format!(
            "output index {output} out of range 0..{}",
            arch.n_outputs()
        )));
    }
    let mut genes = Vec::new();
    for layer in 0..arch.n_layers() {
        let cells = arch.tree_cells(layer, output);
        let start = arch.cell_genes(layer, cells.start).start;
        let end = arch.cell_genes(layer, cells.end - 1).end;
        genes.extend(start..end);
    }
    Ok(genes)
}

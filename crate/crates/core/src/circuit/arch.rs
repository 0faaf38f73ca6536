use std::ops::Range;

use super::cell::{check_levels, CellParams, Resistance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Input count plus one fan-in per layer.
///
/// Layer `k` has `n_inputs / (fan_ins[0] · … · fan_ins[k])` cells; each cell
/// owns `fan_in + 1` genes (its input resistors, then `R_o`).
#[derive(Debug, Clone, PartialEq)]
pub struct ArchitectureSpec<T> {
    n_inputs: usize,
    fan_ins: Vec<usize>,
    logic_high: T,
    threshold: T,
    layer_sizes: Vec<usize>,
    gene_offsets: Vec<usize>,
}

impl<T: Scalar> ArchitectureSpec<T> {
    /// Architecture with the default levels (`logic_high` 1.0, `V_T` 0.5).
    pub fn new(n_inputs: usize, fan_ins: Vec<usize>) -> Result<Self> {
        Self::with_levels(n_inputs, fan_ins, T::one(), T::of(0.5))
    }

    pub fn with_levels(
        n_inputs: usize,
        fan_ins: Vec<usize>,
        logic_high: T,
        threshold: T,
    ) -> Result<Self> {
        if n_inputs == 0 {
            return Err(Error::Config("n_inputs must be positive".into()));
        }
        if fan_ins.is_empty() {
            return Err(Error::Config("fan_ins must name at least one layer".into()));
        }
        check_levels(threshold, logic_high)?;
        let mut layer_sizes = Vec::with_capacity(fan_ins.len());
        let mut width = n_inputs;
        for (layer, &fan) in fan_ins.iter().enumerate() {
            if fan == 0 {
                return Err(Error::Config(format!(
                    "layer {layer}: fan-in must be positive"
                )));
            }
            if !width.is_multiple_of(fan) {
                return Err(Error::Config(format!(
                    "layer {layer}: {width} signals are not divisible by fan-in {fan}"
                )));
            }
            width /= fan;
            layer_sizes.push(width);
        }
        let mut gene_offsets = Vec::with_capacity(fan_ins.len() + 1);
        let mut offset = 0;
        for (&cells, &fan) in layer_sizes.iter().zip(&fan_ins) {
            gene_offsets.push(offset);
            offset += cells * (fan + 1);
        }
        gene_offsets.push(offset);
        Ok(ArchitectureSpec {
            n_inputs,
            fan_ins,
            logic_high,
            threshold,
            layer_sizes,
            gene_offsets,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn fan_ins(&self) -> &[usize] {
        &self.fan_ins
    }

    pub fn n_layers(&self) -> usize {
        self.fan_ins.len()
    }

    pub fn logic_high(&self) -> T {
        self.logic_high
    }

    pub fn threshold(&self) -> T {
        self.threshold
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn n_outputs(&self) -> usize {
        *self.layer_sizes.last().expect("at least one layer")
    }

    pub fn n_cells(&self) -> usize {
        self.layer_sizes.iter().sum()
    }

    pub fn rset_len(&self) -> usize {
        *self.gene_offsets.last().expect("offsets end with total")
    }

    /// Number of signals feeding `layer` (primary inputs for layer 0).
    pub fn layer_input_width(&self, layer: usize) -> usize {
        if layer == 0 {
            self.n_inputs
        } else {
            self.layer_sizes[layer - 1]
        }
    }

    /// Genes of cell `cell` in `layer`: inputs first, `R_o` last.
    pub fn cell_genes(&self, layer: usize, cell: usize) -> Range<usize> {
        let stride = self.fan_ins[layer] + 1;
        let start = self.gene_offsets[layer] + cell * stride;
        start..start + stride
    }

    /// Genes of every cell of `layer`.
    pub fn layer_genes(&self, layer: usize) -> Range<usize> {
        self.gene_offsets[layer]..self.gene_offsets[layer + 1]
    }

    /// Cells of `layer` that belong to output tree `output`.
    pub fn tree_cells(&self, layer: usize, output: usize) -> Range<usize> {
        let per_tree = self.layer_sizes[layer] / self.n_outputs();
        output * per_tree..(output + 1) * per_tree
    }

    /// Cells per output tree, summed over layers.
    pub fn tree_cell_count(&self) -> usize {
        self.layer_sizes.iter().map(|s| s / self.n_outputs()).sum()
    }
}

/// Cells per layer, last entry `N_o`.
pub fn layer_sizes<T: Scalar>(arch: &ArchitectureSpec<T>) -> Vec<usize> {
    arch.layer_sizes().to_vec()
}

/// Genome length: Σ cells × (fan_in + 1).
pub fn rset_len<T: Scalar>(arch: &ArchitectureSpec<T>) -> usize {
    arch.rset_len()
}

/// All resistor values of a network in canonical layer-major gene order.
#[derive(Debug, Clone, PartialEq)]
pub struct Rset<T> {
    values: Vec<Resistance<T>>,
}

impl<T: Scalar> Rset<T> {
    pub fn new(values: Vec<Resistance<T>>) -> Self {
        Rset { values }
    }

    pub fn from_values(values: &[T]) -> Result<Self> {
        values
            .iter()
            .map(|&v| Resistance::new(v))
            .collect::<Result<Vec<_>>>()
            .map(Rset::new)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Resistance<T>] {
        &self.values
    }

    pub fn get(&self, gene: usize) -> Resistance<T> {
        self.values[gene]
    }

    pub fn set(&mut self, gene: usize, value: Resistance<T>) {
        self.values[gene] = value;
    }

    /// Parameters of one cell, for inspection and per-cell checks.
    pub fn cell(&self, arch: &ArchitectureSpec<T>, layer: usize, cell: usize) -> CellParams<T> {
        let genes = &self.values[arch.cell_genes(layer, cell)];
        let (inputs, ro) = genes.split_at(genes.len() - 1);
        CellParams {
            input_resistances: inputs.to_vec(),
            output_resistance: ro[0],
            threshold: arch.threshold(),
            logic_high: arch.logic_high(),
        }
    }
}

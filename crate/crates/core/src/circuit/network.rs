use std::ops::Range;

use super::arch::{ArchitectureSpec, Rset};
use super::cell::{cell_node_voltage, divide_node};
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An architecture with its resistor values, ready to evaluate.
///
/// Cell `k` of layer `L` reads signals `[k·fan_in, (k+1)·fan_in)` of layer
/// `L−1` (the primary inputs for `L = 0`). Conductances and per-cell
/// denominators are cached at construction; the value is immutable after.
#[derive(Debug, Clone)]
pub struct Network<T> {
    arch: ArchitectureSpec<T>,
    rset: Rset<T>,
    conductance: Vec<T>,
    denominator: Vec<T>,
    cell_offsets: Vec<usize>,
}

impl<T: Scalar> Network<T> {
    pub fn new(arch: ArchitectureSpec<T>, rset: Rset<T>) -> Result<Self> {
        if rset.len() != arch.rset_len() {
            return Err(Error::Config(format!(
                "Rset has {} values but the architecture needs {}",
                rset.len(),
                arch.rset_len()
            )));
        }
        let conductance: Vec<T> = rset.values().iter().map(|r| r.conductance()).collect();
        let mut denominator = Vec::with_capacity(arch.n_cells());
        let mut cell_offsets = Vec::with_capacity(arch.n_layers());
        for layer in 0..arch.n_layers() {
            cell_offsets.push(denominator.len());
            for cell in 0..arch.layer_sizes()[layer] {
                let genes = &conductance[arch.cell_genes(layer, cell)];
                let (inputs, ro) = genes.split_at(genes.len() - 1);
                // same summation order as cell_node_voltage
                let mut den = ro[0];
                for &g in inputs {
                    den = den + g;
                }
                denominator.push(den);
            }
        }
        Ok(Network {
            arch,
            rset,
            conductance,
            denominator,
            cell_offsets,
        })
    }

    pub fn arch(&self) -> &ArchitectureSpec<T> {
        &self.arch
    }

    pub fn rset(&self) -> &Rset<T> {
        &self.rset
    }

    pub fn into_rset(self) -> Rset<T> {
        self.rset
    }

    pub fn n_cells(&self) -> usize {
        self.arch.n_cells()
    }

    fn check_inputs(&self, inputs: &[bool]) -> Result<()> {
        if inputs.len() != self.arch.n_inputs() {
            return Err(Error::Contract(format!(
                "network expects {} inputs, got {}",
                self.arch.n_inputs(),
                inputs.len()
            )));
        }
        Ok(())
    }

    /// Output code for a binary input pattern (1 → logic high, 0 → 0 V).
    pub fn forward(&self, inputs: &[bool]) -> Result<Code> {
        self.check_inputs(inputs)?;
        Ok(Code::new(
            self.eval_outputs(inputs, 0..self.arch.n_outputs()),
        ))
    }

    /// Evaluates only the trees feeding `outputs`; the other trees are untouched.
    pub fn forward_outputs(&self, inputs: &[bool], outputs: Range<usize>) -> Result<Vec<bool>> {
        self.check_inputs(inputs)?;
        if outputs.end > self.arch.n_outputs() || outputs.start > outputs.end {
            return Err(Error::Contract(format!(
                "output range {outputs:?} outside 0..{}",
                self.arch.n_outputs()
            )));
        }
        Ok(self.eval_outputs(inputs, outputs))
    }

    pub(crate) fn eval_outputs(&self, inputs: &[bool], outputs: Range<usize>) -> Vec<bool> {
        let vdd = self.arch.logic_high();
        let vt = self.arch.threshold();
        let n_out = self.arch.n_outputs();
        let mut prev: Vec<bool> = Vec::new();
        let mut prev_start = 0;
        for layer in 0..self.arch.n_layers() {
            let per_tree = self.arch.layer_sizes()[layer] / n_out;
            let cells = outputs.start * per_tree..outputs.end * per_tree;
            let fan = self.arch.fan_ins()[layer];
            let mut cur = Vec::with_capacity(cells.len());
            for cell in cells.clone() {
                let src = if layer == 0 {
                    &inputs[cell * fan..(cell + 1) * fan]
                } else {
                    let s = cell * fan - prev_start;
                    &prev[s..s + fan]
                };
                let g = &self.conductance[self.arch.cell_genes(layer, cell)];
                let mut num = T::zero();
                for (&bit, &gi) in src.iter().zip(g) {
                    if bit {
                        num = num + gi * vdd;
                    }
                }
                let v = divide_node(num, self.denominator[self.cell_offsets[layer] + cell]);
                cur.push(v < vt);
            }
            prev = cur;
            prev_start = cells.start;
        }
        prev
    }

    /// Node voltage of every cell, layer by layer, through the per-cell divider.
    pub fn node_voltages(&self, inputs: &[bool]) -> Result<Vec<Vec<T>>> {
        self.check_inputs(inputs)?;
        let vdd = self.arch.logic_high();
        let level = |b: bool| if b { vdd } else { T::zero() };
        let mut signals: Vec<T> = inputs.iter().map(|&b| level(b)).collect();
        let mut out = Vec::with_capacity(self.arch.n_layers());
        for layer in 0..self.arch.n_layers() {
            let fan = self.arch.fan_ins()[layer];
            let mut nodes = Vec::with_capacity(self.arch.layer_sizes()[layer]);
            for cell in 0..self.arch.layer_sizes()[layer] {
                let params = self.rset.cell(&self.arch, layer, cell);
                nodes.push(cell_node_voltage(
                    &signals[cell * fan..(cell + 1) * fan],
                    &params,
                )?);
            }
            signals = nodes
                .iter()
                .map(|&v| level(v < self.arch.threshold()))
                .collect();
            out.push(nodes);
        }
        Ok(out)
    }
}

pub fn build_network<T: Scalar>(arch: &ArchitectureSpec<T>, rset: Rset<T>) -> Result<Network<T>> {
    Network::new(arch.clone(), rset)
}

pub fn forward<T: Scalar>(net: &Network<T>, inputs: &[bool]) -> Result<Code> {
    net.forward(inputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn single_cell() -> Network<f64> {
        let arch = ArchitectureSpec::new(2, vec![2]).unwrap();
        build_network(&arch, Rset::from_values(&[1.0, 1.0, 1.0]).unwrap()).unwrap()
    }

    fn random_net(arch: ArchitectureSpec<f64>, rng: &mut ChaCha8Rng) -> Network<f64> {
        let values: Vec<f64> = (0..arch.rset_len())
            .map(|_| 10f64.powf(rng.random_range(0.0..4.0)))
            .collect();
        Network::new(arch, Rset::from_values(&values).unwrap()).unwrap()
    }

    #[test]
    fn default_architecture_has_264_cells() {
        let arch = ArchitectureSpec::new(1296, vec![6, 6, 3]).unwrap();
        let net = random_net(arch, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(net.n_cells(), 264);
    }

    #[test]
    fn build_rejects_wrong_length() {
        let arch = ArchitectureSpec::<f64>::new(2, vec![2]).unwrap();
        assert_eq!(
            build_network(&arch, Rset::from_values(&[1.0; 3]).unwrap())
                .unwrap()
                .n_cells(),
            1
        );
        assert!(matches!(
            build_network(&arch, Rset::from_values(&[1.0; 4]).unwrap()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn single_cell_forward() {
        let net = single_cell();
        assert_eq!(forward(&net, &[false, false]).unwrap().bits(), &[true]);
        assert_eq!(forward(&net, &[true, true]).unwrap().bits(), &[false]);
        assert_eq!(forward(&net, &[true, false]).unwrap().bits(), &[true]);
        assert!(forward(&net, &[true]).is_err());
    }

    #[test]
    fn forward_agrees_with_node_voltages_and_tree_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let arch = ArchitectureSpec::new(72, vec![3, 2, 3]).unwrap();
        let net = random_net(arch, &mut rng);
        for _ in 0..200 {
            let x: Vec<bool> = (0..72).map(|_| rng.random_bool(0.4)).collect();
            let code = net.forward(&x).unwrap();
            assert_eq!(code, net.forward(&x).unwrap());
            let volts = net.node_voltages(&x).unwrap();
            let last: Vec<bool> = volts.last().unwrap().iter().map(|&v| v < 0.5).collect();
            assert_eq!(code.bits(), &last[..]);
            for k in 0..net.arch().n_outputs() {
                assert_eq!(
                    net.forward_outputs(&x, k..k + 1).unwrap(),
                    vec![code.bit(k)]
                );
            }
        }
    }
}

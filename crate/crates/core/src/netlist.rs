//! SPICE-like netlist export for hardware hand-off, plus a parser and a DC
//! self-check that re-derives every cell's node voltage from the netlist text.
//!
//! Dialect, one statement per line (`*` starts a comment):
//!
//! ```text
//! VIN<i> in<i> 0 DC 0                       input source stub
//! RL<l>C<c>I<k> <src> nL<l>C<c> <ohms>      input resistor k of cell c, layer l
//! RL<l>C<c>O nL<l>C<c> 0 <ohms>             output resistor to ground
//! XL<l>C<c> nL<l>C<c> oL<l>C<c> INV VT=<v> VDD=<v>
//! ```
//!
//! `<src>` is `in<i>` for layer 0 and `oL<l-1>C<j>` above it.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::circuit::Network;
use crate::error::{Error, Result};
use crate::evolution::{stream, StreamTag};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Statement<T> {
    Source {
        index: usize,
        node: String,
    },
    Resistor {
        name: String,
        a: String,
        b: String,
        value: T,
    },
    Inverter {
        name: String,
        input: String,
        output: String,
        threshold: T,
        logic_high: T,
    },
}

impl<T: Scalar> Statement<T> {
    pub fn to_line(&self) -> String {
        match self {
            Statement::Source { index, node } => format!("VIN{index} {node} 0 DC 0"),
            Statement::Resistor { name, a, b, value } => {
                format!("{name} {a} {b} {}", value.to_exact_string())
            }
            Statement::Inverter {
                name,
                input,
                output,
                threshold,
                logic_high,
            } => format!(
                "{name} {input} {output} INV VT={} VDD={}",
                threshold.to_exact_string(),
                logic_high.to_exact_string()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Netlist<T> {
    pub statements: Vec<Statement<T>>,
}

fn node(layer: usize, cell: usize) -> String {
    format!("nL{layer}C{cell}")
}

fn out_node(layer: usize, cell: usize) -> String {
    format!("oL{layer}C{cell}")
}

impl<T: Scalar> Netlist<T> {
    pub fn from_network(net: &Network<T>) -> Self {
        let arch = net.arch();
        let mut statements = Vec::with_capacity(arch.n_inputs() + arch.rset_len() + arch.n_cells());
        for i in 0..arch.n_inputs() {
            statements.push(Statement::Source {
                index: i,
                node: format!("in{i}"),
            });
        }
        for layer in 0..arch.n_layers() {
            let fan = arch.fan_ins()[layer];
            for cell in 0..arch.layer_sizes()[layer] {
                let genes = arch.cell_genes(layer, cell);
                for k in 0..fan {
                    let src = cell * fan + k;
                    statements.push(Statement::Resistor {
                        name: format!("RL{layer}C{cell}I{k}"),
                        a: if layer == 0 {
                            format!("in{src}")
                        } else {
                            out_node(layer - 1, src)
                        },
                        b: node(layer, cell),
                        value: net.rset().get(genes.start + k).value(),
                    });
                }
                statements.push(Statement::Resistor {
                    name: format!("RL{layer}C{cell}O"),
                    a: node(layer, cell),
                    b: "0".into(),
                    value: net.rset().get(genes.end - 1).value(),
                });
                statements.push(Statement::Inverter {
                    name: format!("XL{layer}C{cell}"),
                    input: node(layer, cell),
                    output: out_node(layer, cell),
                    threshold: arch.threshold(),
                    logic_high: arch.logic_high(),
                });
            }
        }
        Netlist { statements }
    }

    pub fn resistor_count(&self) -> usize {
        self.statements
            .iter()
            .filter(|s| matches!(s, Statement::Resistor { .. }))
            .count()
    }

    pub fn inverter_count(&self) -> usize {
        self.statements
            .iter()
            .filter(|s| matches!(s, Statement::Inverter { .. }))
            .count()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("* memnet netlist\n");
        let _ = writeln!(
            s,
            "* {} resistors, {} inverters",
            self.resistor_count(),
            self.inverter_count()
        );
        for st in &self.statements {
            s.push_str(&st.to_line());
            s.push('\n');
        }
        s.push_str(".end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut statements = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('*') || line.eq_ignore_ascii_case(".end") {
                continue;
            }
            let err = |reason: String| Error::NetlistParse {
                line: i + 1,
                reason,
            };
            let tok: Vec<&str> = line.split_whitespace().collect();
            let value = |s: &str| -> Result<T> {
                s.parse::<T>().map_err(|_| err(format!("bad number {s:?}")))
            };
            let st = match tok[0].chars().next() {
                Some('V') => {
                    let index = tok[0][3..]
                        .parse()
                        .ok()
                        .filter(|_| tok[0].starts_with("VIN") && tok.len() == 5)
                        .ok_or_else(|| err(format!("bad source statement {line:?}")))?;
                    Statement::Source {
                        index,
                        node: tok[1].to_string(),
                    }
                }
                Some('R') if tok.len() == 4 => Statement::Resistor {
                    name: tok[0].to_string(),
                    a: tok[1].to_string(),
                    b: tok[2].to_string(),
                    value: value(tok[3])?,
                },
                Some('X') if tok.len() == 6 && tok[3] == "INV" => {
                    let param = |t: &str, key: &str| -> Result<T> {
                        value(
                            t.strip_prefix(key)
                                .ok_or_else(|| err(format!("expected {key}")))?,
                        )
                    };
                    Statement::Inverter {
                        name: tok[0].to_string(),
                        input: tok[1].to_string(),
                        output: tok[2].to_string(),
                        threshold: param(tok[4], "VT=")?,
                        logic_high: param(tok[5], "VDD=")?,
                    }
                }
                _ => return Err(err(format!("unrecognized statement {line:?}"))),
            };
            statements.push(st);
        }
        Ok(Netlist { statements })
    }

    /// Sorted statement lines, for order-insensitive comparison.
    pub fn statement_multiset(&self) -> Vec<String> {
        let mut v: Vec<String> = self.statements.iter().map(Statement::to_line).collect();
        v.sort();
        v
    }

    /// DC solve straight from the statements: every inverter input node sits
    /// at `ΣG·V / ΣG` over its incident resistors, with ground at 0 V, input
    /// nodes at their source level and inverter outputs ideal.
    ///
    /// Returns node voltages per inverter (statement order) and the final
    /// output level of every inverter.
    pub fn solve(&self, inputs: &[bool]) -> Result<(Vec<T>, Vec<bool>)> {
        let mut incident: HashMap<&str, Vec<(&str, T)>> = HashMap::new();
        let mut known: HashMap<&str, T> = HashMap::new();
        known.insert("0", T::zero());
        let mut inverters = Vec::new();
        let mut vdd = T::one();
        for st in &self.statements {
            match st {
                Statement::Resistor { a, b, value, .. } => {
                    let g = if value.is_infinite() {
                        T::zero()
                    } else {
                        value.recip()
                    };
                    incident.entry(a).or_default().push((b, g));
                    incident.entry(b).or_default().push((a, g));
                }
                Statement::Inverter { logic_high, .. } => {
                    vdd = *logic_high;
                    inverters.push(st);
                }
                Statement::Source { .. } => {}
            }
        }
        for st in &self.statements {
            if let Statement::Source { index, node } = st {
                let bit = *inputs.get(*index).ok_or_else(|| {
                    Error::SelfCheck(format!("netlist source VIN{index} has no input value"))
                })?;
                known.insert(node, if bit { vdd } else { T::zero() });
            }
        }
        let mut node_v = vec![T::nan(); inverters.len()];
        let mut out_bits = vec![false; inverters.len()];
        let mut done = vec![false; inverters.len()];
        let mut remaining = inverters.len();
        while remaining > 0 {
            let before = remaining;
            for (i, st) in inverters.iter().enumerate() {
                let Statement::Inverter {
                    input,
                    output,
                    threshold,
                    logic_high,
                    ..
                } = st
                else {
                    unreachable!()
                };
                if done[i] {
                    continue;
                }
                let terms = incident
                    .get(input.as_str())
                    .map(Vec::as_slice)
                    .unwrap_or(&[]);
                if terms.iter().any(|(n, _)| !known.contains_key(n)) {
                    continue;
                }
                let (mut num, mut den) = (T::zero(), T::zero());
                for (n, g) in terms {
                    num = num + *g * known[n];
                    den = den + *g;
                }
                let v = if den > T::zero() {
                    num / den
                } else {
                    T::zero()
                };
                let bit = v < *threshold;
                node_v[i] = v;
                out_bits[i] = bit;
                known.insert(output, if bit { *logic_high } else { T::zero() });
                done[i] = true;
                remaining -= 1;
            }
            if remaining == before {
                return Err(Error::SelfCheck(
                    "netlist has inverter inputs with undriven neighbours".into(),
                ));
            }
        }
        Ok((node_v, out_bits))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfCheckReport {
    pub trials: usize,
    pub cells: usize,
    pub max_rel_error: f64,
}

/// Compares [`Netlist::solve`] against the simulator on `trials` random
/// inputs: node voltages to `1e-9` relative and identical output bits.
pub fn self_check<T: Scalar>(
    netlist: &Netlist<T>,
    net: &Network<T>,
    trials: usize,
    seed: u64,
) -> Result<SelfCheckReport> {
    let mut rng = stream(seed, StreamTag::NetlistCheck, 0);
    let mut max_rel = 0.0f64;
    for t in 0..trials {
        let x: Vec<bool> = (0..net.arch().n_inputs())
            .map(|_| rng.random_bool(0.5))
            .collect();
        let sim: Vec<T> = net.node_voltages(&x)?.into_iter().flatten().collect();
        let (derived, bits) = netlist.solve(&x)?;
        if derived.len() != sim.len() {
            return Err(Error::SelfCheck(format!(
                "netlist has {} inverters, network has {} cells",
                derived.len(),
                sim.len()
            )));
        }
        for (cell, (a, b)) in derived.iter().zip(&sim).enumerate() {
            let (a, b) = (a.as_f64(), b.as_f64());
            let scale = a.abs().max(b.abs());
            let rel = if scale == 0.0 {
                0.0
            } else {
                (a - b).abs() / scale
            };
            max_rel = max_rel.max(rel);
            if rel > 1e-9 {
                return Err(Error::SelfCheck(format!(
                    "trial {t}, cell {cell}: netlist {a} vs simulator {b}"
                )));
            }
        }
        let n_out = net.arch().n_outputs();
        let code = net.forward(&x)?;
        if bits[bits.len() - n_out..] != *code.bits() {
            return Err(Error::SelfCheck(format!("trial {t}: output bits differ")));
        }
    }
    Ok(SelfCheckReport {
        trials,
        cells: net.n_cells(),
        max_rel_error: max_rel,
    })
}

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Resistance in normalized ohms.
///
/// Always positive. Finite except for the open-circuit sentinel produced by
/// [`Resistance::open`], whose conductance is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Resistance<T>(T);

impl<T: Scalar> Resistance<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_finite() && value > T::zero() {
            Ok(Resistance(value))
        } else {
            Err(Error::Config(format!(
                "resistance must be positive and finite, got {value}"
            )))
        }
    }

    pub fn open() -> Self {
        Resistance(T::infinity())
    }

    pub fn is_open(self) -> bool {
        self.0.is_infinite()
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn conductance(self) -> T {
        if self.is_open() {
            T::zero()
        } else {
            self.0.recip()
        }
    }
}

/// One cell: `N` input resistors into a summing node, `R_o` from the node to
/// ground, and an inverter with threshold `V_T` on the node.
#[derive(Debug, Clone, PartialEq)]
pub struct CellParams<T> {
    pub input_resistances: Vec<Resistance<T>>,
    pub output_resistance: Resistance<T>,
    pub threshold: T,
    pub logic_high: T,
}

impl<T: Scalar> CellParams<T> {
    pub fn new(
        input_resistances: Vec<Resistance<T>>,
        output_resistance: Resistance<T>,
        threshold: T,
        logic_high: T,
    ) -> Result<Self> {
        if input_resistances.is_empty() {
            return Err(Error::Config("cell fan-in must be at least 1".into()));
        }
        check_levels(threshold, logic_high)?;
        Ok(CellParams {
            input_resistances,
            output_resistance,
            threshold,
            logic_high,
        })
    }

    pub fn fan_in(&self) -> usize {
        self.input_resistances.len()
    }
}

pub(crate) fn check_levels<T: Scalar>(threshold: T, logic_high: T) -> Result<()> {
    if !(logic_high.is_finite() && logic_high > T::zero()) {
        return Err(Error::Config(format!(
            "logic_high must be positive, got {logic_high}"
        )));
    }
    if !(threshold > T::zero() && threshold < logic_high) {
        return Err(Error::Config(format!(
            "threshold must lie strictly between 0 and logic_high ({logic_high}), got {threshold}"
        )));
    }
    Ok(())
}

/// Summing-node voltage `ΣG_i·V_i / (G_o + ΣG_i)` with `R_o` tied to 0 V.
///
/// A node with no conducting path at all (every resistor open) reads 0 V.
pub fn cell_node_voltage<T: Scalar>(voltages: &[T], cell: &CellParams<T>) -> Result<T> {
    if voltages.len() != cell.fan_in() {
        return Err(Error::Contract(format!(
            "cell has fan-in {} but received {} voltages",
            cell.fan_in(),
            voltages.len()
        )));
    }
    let mut num = T::zero();
    let mut den = cell.output_resistance.conductance();
    for (&v, r) in voltages.iter().zip(&cell.input_resistances) {
        let g = r.conductance();
        num = num + g * v;
        den = den + g;
    }
    Ok(divide_node(num, den))
}

#[inline]
pub(crate) fn divide_node<T: Scalar>(num: T, den: T) -> T {
    if den > T::zero() {
        num / den
    } else {
        T::zero()
    }
}

/// Inverter output: `true` (logic high) iff `V_node < V_T`; a tie reads low.
pub fn cell_output<T: Scalar>(voltages: &[T], cell: &CellParams<T>) -> Result<bool> {
    Ok(cell_node_voltage(voltages, cell)? < cell.threshold)
}

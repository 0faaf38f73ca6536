//! Scalar abstraction for the circuit math.
//!
//! Everything that touches resistances and voltages is generic over
//! [`Scalar`], implemented for `f32` and `f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type usable as a resistance / voltage value.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + FromStr + Send + Sync + 'static
{
    /// Name written into model files.
    const NAME: &'static str;
    /// Significant decimal digits needed for an exact text round trip.
    const SIG_DIGITS: usize;

    /// Lossy conversion from `f64`. Used for sampled values and config constants.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable in every Scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }

    /// Scientific notation with `SIG_DIGITS` significant digits.
    fn to_exact_string(self) -> String {
        format!("{:.*e}", Self::SIG_DIGITS - 1, self)
    }
}

impl Scalar for f32 {
    const NAME: &'static str = "f32";
    const SIG_DIGITS: usize = 9;
}

impl Scalar for f64 {
    const NAME: &'static str = "f64";
    const SIG_DIGITS: usize = 17;
}

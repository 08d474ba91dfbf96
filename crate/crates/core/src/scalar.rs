//! Floating-point scalar abstraction: the whole library is generic over the
//! real type backing amplitudes and objective values.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// f32 or f64. Everything the simulator needs from a real scalar.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossless conversion of small nonnegative integers (counts, qubit
    /// indices); values are always far below the mantissa limit.
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

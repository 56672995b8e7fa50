use std::fmt;
use std::iter::Sum;

use num_traits::{Float as NumFloat, FloatConst, FromPrimitive, ToPrimitive};
use rand::distributions::uniform::SampleUniform;

/// Scalar type the whole toolkit is generic over.
///
/// Everything the cost models, hull geometry and landscape metrics need:
/// IEEE float arithmetic, π, conversions from counts, uniform sampling for
/// instance generation, and thread-safety so immutable instances can be
/// shared across worker threads.
pub trait Float:
    NumFloat
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + SampleUniform
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    fn from_count(v: usize) -> Self {
        FromPrimitive::from_usize(v).unwrap()
    }

    fn from_f64_lossy(v: f64) -> Self {
        FromPrimitive::from_f64(v).unwrap()
    }

    /// TSPLIB `nint`: nearest integer, halves away from zero.
    fn nint(self) -> Self {
        (self + Self::from_f64_lossy(0.5)).floor()
    }
}

impl Float for f32 {}
impl Float for f64 {}

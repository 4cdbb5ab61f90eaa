//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the geometry is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every literal used by the crate is representable.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest `x` for which `exp(x)` stays finite, minus a small safety margin.
    #[inline]
    fn max_exponent() -> Self {
        Self::max_value().ln() - Self::lit(4.0)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

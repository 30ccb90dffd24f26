//! Scalar traits the rest of the crate is generic over.
//!
//! Classification arithmetic is exact and runs over any signed integer type
//! ([`ExactInt`]); the volume side of the complexity bounds runs over any
//! IEEE float ([`Real`]).

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// Signed integer type usable for continued-fraction evaluation.
///
/// Implemented for `i64`, `i128` and `num_bigint::BigInt`.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

/// Floating point type used for hyperbolic volumes.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync {
    /// Lift an `f64` constant. Never fails for `f32`/`f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("float literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}

//! Floating-point scalar abstraction shared by every module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Real scalar type the simulator is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// One draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Converts an `f64` literal. Panics only if the target cannot represent finite `f64`s.
    #[inline(always)]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    /// Converts a count.
    #[inline(always)]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("representable count")
    }

    #[inline(always)]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    #[inline(always)]
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Real for f64 {
    #[inline(always)]
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

//! Floating-point abstraction shared by every pricing routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar usable by the analytic and Monte Carlo routines: `f32` or `f64`.
///
/// The complementary error function is not part of [`num_traits::Float`], so
/// each implementation forwards to the matching `libm` routine.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn erfc(self) -> Self;

    /// Lossless for `f64`, rounding for `f32`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("every f64 converts to a float type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }
}

impl Scalar for f64 {
    #[inline]
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

impl Scalar for f32 {
    #[inline]
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

/// Standard normal cumulative distribution function.
///
/// Evaluated as `erfc(-x/√2)/2`, which keeps full relative accuracy in the
/// lower tail where `1 - Φ(|x|)` would cancel.
#[inline]
pub fn normal_cdf<T: Scalar>(x: T) -> T {
    T::lit(0.5) * (-x * T::FRAC_1_SQRT_2()).erfc()
}

#[inline]
pub fn normal_pdf<T: Scalar>(x: T) -> T {
    let inv_sqrt_2pi = T::FRAC_1_SQRT_2() * T::FRAC_2_SQRT_PI() * T::lit(0.5);
    inv_sqrt_2pi * (-T::lit(0.5) * x * x).exp()
}

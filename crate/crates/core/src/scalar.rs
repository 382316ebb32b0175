//! Scalar abstraction for the whole crate.
//!
//! Every physics module is generic over the real scalar type so that the
//! same code runs in `f32` and `f64`. Concrete `f64` aliases for the main
//! types live at the crate root; the test suites and the CLI use those.

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Real scalar type of the simulation (`f32` or `f64`).
///
/// Bundles the floating-point traits the numerics need plus `rustfft`'s
/// transform requirements.
pub trait Scalar:
    Float + FloatConst + rustfft::FftNum + Sum + Display + LowerExp + Debug
{
    /// Converts an `f64` constant into `Self`.
    ///
    /// All literal physical constants in the crate go through this helper.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// Machine-precision scale used for internal sanity guards.
    #[inline]
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over the crate scalar.
pub type C<T> = Complex<T>;

/// `0 + 0i`.
#[inline]
pub fn c_zero<T: Scalar>() -> C<T> {
    C::new(T::zero(), T::zero())
}

/// `1 + 0i`.
#[inline]
pub fn c_one<T: Scalar>() -> C<T> {
    C::new(T::one(), T::zero())
}

/// `0 + 1i`.
#[inline]
pub fn c_i<T: Scalar>() -> C<T> {
    C::new(T::zero(), T::one())
}

/// Real number promoted to the complex plane.
#[inline]
pub fn c_re<T: Scalar>(x: T) -> C<T> {
    C::new(x, T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_convert_exactly() {
        assert_eq!(f64::lit(0.25), 0.25);
        assert_eq!(f32::lit(0.25), 0.25f32);
    }

    #[test]
    fn complex_helpers() {
        let z: C<f64> = c_i::<f64>() * c_i::<f64>();
        assert_eq!(z, C::new(-1.0, 0.0));
        assert_eq!(c_re(3.0) + c_one::<f64>(), C::new(4.0, 0.0));
    }
}

//! Scalar abstractions.
//!
//! Floating-point code (theta sums, Weil operators, commutants, the closed
//! Verlinde formula) is written against [`Real`], implemented for `f32` and
//! `f64`. Exact integer matrices are written against [`Coeff`], which covers
//! the machine integers and `BigInt`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use nalgebra::RealField;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

pub use num_complex::Complex;

/// Real floating-point scalar.
pub trait Real: RealField + Copy + ToPrimitive + FromPrimitive + Display + Send + Sync {
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    fn from_usize_lossy(n: usize) -> Self {
        nalgebra::convert(n as f64)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Integer coefficient ring for exact matrices (ℤ, or ℤ/k when paired with a modulus).
pub trait Coeff:
    Integer
    + Signed
    + Clone
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Integer
        + Signed
        + Clone
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// `e^{iθ}`.
pub(crate) fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// `|z|`.
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Tolerance below which a double-precision quantity counts as zero in the
/// algebraic predicates (membership, rank, Leibniz and Jacobi residuals).
pub const EXACT_TOL: f64 = 1e-12;

/// Coefficient field for the algebraic layer.
///
/// Implemented for `f64` (zero test against [`EXACT_TOL`]) and for
/// [`Rational64`] (exact zero test), so the built-in fixtures can be
/// classified without rounding.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn is_negligible(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;
    fn from_int(v: i64) -> Self;
}

impl Scalar for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() <= EXACT_TOL
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for Rational64 {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }
}

/// Rational shorthand used by fixtures and tests.
pub fn q(num: i64, den: i64) -> Rational64 {
    Rational64::new(num, den)
}

/// Integer shorthand.
pub fn qi(v: i64) -> Rational64 {
    Rational64::from_integer(v)
}

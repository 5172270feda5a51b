//! Coefficient backends.
//!
//! Two backends exist: exact rationals for every algebraic identity check,
//! and complex doubles for the one-dimensional toy model. A value of
//! [`GradedExtensor`](crate::exterior::GradedExtensor) is generic over its
//! backend, so two backends can never meet inside one expression.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};
use num::{BigInt, BigRational, Signed};

pub use num::complex::Complex64;

/// Exact rational scalar.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short backend name, surfaced in reports.
    const BACKEND: &'static str;
}

impl Scalar for Rational {
    const BACKEND: &'static str = "rational";
}

impl Scalar for Complex64 {
    const BACKEND: &'static str = "complex64";
}

/// `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Lossy conversion for display only.
pub fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_sign(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

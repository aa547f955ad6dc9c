//! Exact arithmetic: rationals, sparse polynomials in `t0, t1, t2`, and the
//! rational function field `Q(t0, t1, t2)` in reduced canonical form.

mod gcd;
mod monomial;
mod tpoly;
mod trat;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use gcd::poly_gcd;
pub use monomial::Monomial;
pub use tpoly::TPoly;
pub use trat::TRat;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// An exact evaluation point `(t0, t1, t2)`.
pub type Point = [BigRat; 3];

/// Minimal field interface shared by the coefficient types used in
/// Laurent polynomials and matrices (`BigRat` for numeric work, `TRat` for
/// symbolic work).
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn try_inv(&self) -> Option<Self>;
}

impl Field for BigRat {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for TRat {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(num.into(), den.into())
}

/// Rejects points where two coordinates coincide; every denominator in the
/// theory is a product of `(ti - tj)`.
pub fn check_point(point: &Point) -> crate::Result<()> {
    if point[0] == point[1] || point[0] == point[2] || point[1] == point[2] {
        Err(crate::Error::CoincidentCoordinates)
    } else {
        Ok(())
    }
}

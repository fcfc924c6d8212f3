//! Exact scalar fields.
//!
//! Everything downstream is generic over [`Scalar`]. The trait is
//! deliberately restricted to exact fields: equality must be decidable and
//! arithmetic must not round, since the audits compare matrix entries
//! against a finite coefficient set.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::Error;

/// An exact field element.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + FromStr
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
    fn from_i64(n: i64) -> Self;

    /// Bit-size of the element; the elimination routines prefer pivots of
    /// small height.
    fn height(&self) -> u64;

    /// Numerator and denominator in decimal, denominator positive.
    fn fraction_parts(&self) -> (String, String);

    fn is_one_value(&self) -> bool {
        self.is_one()
    }
}

impl Scalar for Ratio<BigInt> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn height(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn fraction_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

/// Machine-word rationals. Arithmetic overflow is not checked, so this is
/// only suitable for small inputs.
impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn height(&self) -> u64 {
        bits_i64(*self.numer()) + bits_i64(*self.denom())
    }

    fn fraction_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

fn bits_i64(v: i64) -> u64 {
    u64::from(64 - v.unsigned_abs().leading_zeros())
}

/// Parses `"p/q"` or `"p"` into a scalar.
pub fn parse_scalar<T: Scalar>(s: &str) -> Result<T, Error> {
    T::from_str(s.trim()).map_err(|_| Error::Parse(format!("invalid rational `{s}`")))
}

/// Renders a scalar the way the file formats expect: `"-3/2"`, `"4"`.
pub fn format_scalar<T: Scalar>(x: &T) -> String {
    let (n, d) = x.fraction_parts();
    if d == "1" {
        n
    } else {
        format!("{n}/{d}")
    }
}

/// LaTeX rendering: `-\tfrac{3}{2}`, `4`.
pub fn latex_scalar<T: Scalar>(x: &T) -> String {
    let (n, d) = x.fraction_parts();
    if d == "1" {
        return n;
    }
    match n.strip_prefix('-') {
        Some(abs) => format!("-\\tfrac{{{abs}}}{{{d}}}"),
        None => format!("\\tfrac{{{n}}}{{{d}}}"),
    }
}

/// Exact rational `num/den` over machine integers, reduced.
pub fn ratio_i64<T: Scalar>(num: i64, den: i64) -> T {
    assert!(den != 0, "zero denominator");
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / g, den / g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    T::from_i64(n) / T::from_i64(d)
}

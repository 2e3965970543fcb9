//! Scalar abstraction for the exact linear-algebra kernels.
//!
//! All core math is generic over a [`Field`]; the concrete instantiation
//! used throughout the crate is arbitrary-precision rationals ([`Rat`]),
//! so every computation is exact. Scalars serialize as `"p/q"` (or `"p"`
//! when the denominator is one).

use std::fmt::{Debug, Display};
use std::ops::{Div, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field scalar. Division by a nonzero element must be exact.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Signed
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
        + Signed
{
}

/// The crate-wide exact scalar: arbitrary-precision rational in lowest terms.
pub type Rat = BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rint(num: i64) -> Rat {
    BigRational::from(BigInt::from(num))
}

/// Parse a scalar from the `"p/q"` / `"p"` wire form.
///
/// Rejects zero denominators and malformed input instead of panicking.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from)
            .map_err(|e| format!("invalid integer {s:?}: {e}")),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("invalid numerator {p:?}: {e}"))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| format!("invalid denominator {q:?}: {e}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Render a scalar in the `"p/q"` / `"p"` wire form.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

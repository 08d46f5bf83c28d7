//! The scalar abstraction shared by every module.
//!
//! All algorithms in this crate are written against [`Scalar`], which is
//! implemented for every `num_rational::Ratio<T>` over a signed integer type.
//! [`crate::Rational`] (arbitrary precision) is the default everywhere; the
//! fixed-width ratios are handy for quick experiments but overflow panics.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::Error;

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Num
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;

    /// `numer / denom`; panics on a zero denominator.
    fn from_frac(numer: i64, denom: i64) -> Self;

    fn is_integer(&self) -> bool;

    fn floor(&self) -> Self;

    /// Parses `"p/q"` or `"p"`, rejecting `q = 0`.
    fn parse(text: &str) -> Result<Self, Error>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + FromPrimitive
        + Hash
        + Debug
        + Display
        + FromStr
        + Send
        + Sync
        + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range for scalar type"))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Ratio::new(
            T::from_i64(numer).expect("integer out of range for scalar type"),
            T::from_i64(denom).expect("integer out of range for scalar type"),
        )
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn parse(text: &str) -> Result<Self, Error> {
        let trimmed = text.trim();
        let bad = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let (numer, denom) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        let numer: T = numer.parse().map_err(|_| bad("invalid numerator"))?;
        let denom: T = match denom {
            Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
            None => T::one(),
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Ratio::new(numer, denom))
    }
}

/// Parses a comma-separated list of rationals, e.g. `"0, 1/2, -3"`.
pub fn parse_csv<S: Scalar>(text: &str) -> Result<Vec<S>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(S::parse).collect()
}

pub fn format_all<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

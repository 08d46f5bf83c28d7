use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::vecops;
use crate::scalar::Scalar;

/// Coordinates of a Lie algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<S>(pub Vec<S>);

/// Dual coordinates `ξ(e_i)` of a linear functional on the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functional<S>(pub Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn zero(dim: usize) -> Self {
        Self(vec![S::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Self(vecops::unit(dim, i))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        vecops::is_zero(&self.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(vecops::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(vecops::sub(&self.0, &other.0))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self(vecops::scale(c, &self.0))
    }

    pub fn neg(&self) -> Self {
        Self(vecops::neg(&self.0))
    }
}

impl<S: Scalar> Functional<S> {
    pub fn zero(dim: usize) -> Self {
        Self(vec![S::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        vecops::is_zero(&self.0)
    }

    /// `ξ(x)`
    pub fn pair(&self, x: &[S]) -> Result<S> {
        if x.len() != self.0.len() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(vecops::dot(&self.0, x))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(vecops::add(&self.0, &other.0))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self(vecops::scale(c, &self.0))
    }
}

fn write_coords<S: Scalar>(f: &mut fmt::Formatter<'_>, coords: &[S]) -> fmt::Result {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    write!(f, "({})", parts.join(", "))
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.0)
    }
}

impl<S: Scalar> fmt::Display for Functional<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.0)
    }
}

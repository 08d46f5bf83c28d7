//! Exact linear algebra and polynomial arithmetic over [`Scalar`](crate::Scalar).

pub mod matrix;
pub mod poly;
pub mod vecops;
pub mod zspan;

pub use matrix::{Matrix, Rref};
pub use poly::{Assignment, Polynomial};

/// Reduced row echelon form of `m`.
pub fn rref<S: crate::Scalar>(m: &Matrix<S>) -> Rref<S> {
    m.rref()
}

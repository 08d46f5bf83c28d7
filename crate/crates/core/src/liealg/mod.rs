//! Nilpotent Lie algebras by structure constants, with subspaces, morphisms,
//! flags of ideals and central lattices.

mod algebra;
pub mod catalog;
mod elements;
mod flag;
mod lattice;
mod morphism;
mod subspace;

pub use algebra::{BracketEntry, LieAlgebra};
pub use elements::{Functional, Vector};
pub use flag::{jordan_holder_flag, Flag};
pub use lattice::Lattice;
pub use morphism::{quotient_by_ideal, restrict_functional, Morphism};
pub use subspace::Subspace;

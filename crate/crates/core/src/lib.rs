//! Exact coadjoint-orbit computations for nilpotent Lie algebras.
//!
//! Everything is generic over a [`Scalar`] (an exact rational type); the
//! `Q*` aliases below fix the scalar to arbitrary-precision [`Rational`].

pub mod bch;
pub mod error;
pub mod exactmath;
pub mod io;
pub mod kirillov;
pub mod liealg;
pub mod orbits;
pub mod prolie;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational; the default scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational (overflow panics).
pub type Rational64 = num_rational::Ratio<i64>;

pub type QMatrix = exactmath::Matrix<Rational>;
pub type QPolynomial = exactmath::Polynomial<Rational>;
pub type QLieAlgebra = liealg::LieAlgebra<Rational>;
pub type QVector = liealg::Vector<Rational>;
pub type QFunctional = liealg::Functional<Rational>;
pub type QSubspace = liealg::Subspace<Rational>;
pub type QMorphism = liealg::Morphism<Rational>;
pub type QFlag = liealg::Flag<Rational>;
pub type QLattice = liealg::Lattice<Rational>;
pub type QGroupElement = bch::GroupElement<Rational>;
pub type QOrbitDescriptor = orbits::OrbitDescriptor<Rational>;
pub type QPolarization = kirillov::Polarization<Rational>;
pub type QInducedRepDescriptor = kirillov::InducedRepDescriptor<Rational>;
pub type QQuotientTower = prolie::QuotientTower<Rational>;
pub type QProductFamily = prolie::ProductFamily<Rational>;

/// Version of this library, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

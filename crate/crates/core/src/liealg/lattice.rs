use crate::error::{Error, Result};
use crate::exactmath::{zspan, Matrix};
use crate::liealg::LieAlgebra;
use crate::scalar::Scalar;

/// A lattice `ℤγ₁ ⊕ … ⊕ ℤγ_r` of linearly independent central vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice<S> {
    ambient: usize,
    generators: Vec<Vec<S>>,
}

impl<S: Scalar> Lattice<S> {
    pub fn new(algebra: &LieAlgebra<S>, generators: Vec<Vec<S>>) -> Result<Self> {
        let n = algebra.dim();
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            if g.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidLattice(format!("generator {i} is zero")));
            }
        }
        if Matrix::from_rows(n, generators.clone()).rank() != generators.len() {
            return Err(Error::InvalidLattice(
                "generators are linearly dependent".into(),
            ));
        }
        let center = algebra.center();
        if let Some(i) = generators.iter().position(|g| !center.contains(g)) {
            return Err(Error::InvalidLattice(format!(
                "generator {i} is not central"
            )));
        }
        Ok(Self {
            ambient: n,
            generators,
        })
    }

    pub fn trivial(ambient: usize) -> Self {
        Self {
            ambient,
            generators: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<S>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        v.len() == self.ambient && zspan::integer_coordinates(&self.generators, v).is_some()
    }

    /// Every generator of `self` is an integer combination of `other`'s.
    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// `m·Γ`.
    pub fn scaled(&self, m: &S) -> Self {
        Self {
            ambient: self.ambient,
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|x| x.clone() * m.clone()).collect())
                .collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.generators
            .iter()
            .map(|g| g.iter().map(ToString::to_string).collect())
            .collect()
    }
}

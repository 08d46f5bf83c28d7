use crate::error::{Error, Result};
use crate::exactmath::{vecops, Matrix};
use crate::liealg::LieAlgebra;
use crate::scalar::Scalar;

/// A linear subspace of an `ambient`-dimensional coordinate space, stored by
/// its reduced row echelon basis (so equal subspaces compare equal).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn span(ambient: usize, vectors: &[Vec<S>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        let m = Matrix::from_rows(ambient, vectors.to_vec()).rref();
        let rows = m.matrix.to_rows().into_iter().take(m.rank).collect();
        Self {
            ambient,
            basis: Matrix::from_rows(ambient, rows),
            pivots: m.pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical (echelon) basis vectors.
    pub fn basis(&self) -> Vec<Vec<S>> {
        self.basis.to_rows()
    }

    pub fn basis_matrix(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    /// Because the basis is reduced, these are just `v` at the pivot columns.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            vecops::axpy(&mut residual, &-c.clone(), self.basis.row(r));
        }
        vecops::is_zero(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[S]) -> Vec<S> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![S::zero(); self.ambient];
        for (r, c) in coords.iter().enumerate() {
            vecops::axpy(&mut out, c, self.basis.row(r));
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vectors = self.basis();
        vectors.extend(other.basis());
        Self::span(self.ambient, &vectors)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // u = Σ a_r u_r lies in `other` iff its reduction modulo `other` vanishes
        let reduce = other.quotient_map();
        let images: Vec<Vec<S>> = self.basis().iter().map(|u| reduce.mul_vec(u)).collect();
        let system = Matrix::from_columns(reduce.rows(), &images);
        let vectors: Vec<Vec<S>> = system
            .nullspace()
            .iter()
            .map(|a| self.combine(a))
            .collect();
        Self::span(self.ambient, &vectors)
    }

    /// Indices of the standard basis vectors complementing the subspace
    /// (the non-pivot columns of the echelon basis).
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Linear map sending `v` to the complement coordinates of `v` reduced
    /// modulo the subspace. Its kernel is exactly the subspace.
    pub fn quotient_map(&self) -> Matrix<S> {
        let complement = self.complement_indices();
        let mut m = Matrix::zeros(complement.len(), self.ambient);
        for (out_row, &c) in complement.iter().enumerate() {
            m.set(out_row, c, S::one());
            for (r, &p) in self.pivots.iter().enumerate() {
                m.set(out_row, p, -self.basis.get(r, c).clone());
            }
        }
        m
    }

    fn check_algebra(&self, algebra: &LieAlgebra<S>) -> Result<()> {
        if algebra.dim() != self.ambient {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, algebra: &LieAlgebra<S>) -> Result<bool> {
        self.check_algebra(algebra)?;
        let basis = self.basis();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                if !self.contains(&algebra.bracket_coords(x, y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_ideal(&self, algebra: &LieAlgebra<S>) -> Result<bool> {
        self.check_algebra(algebra)?;
        for y in self.basis() {
            for i in 0..algebra.dim() {
                if !self.contains(&algebra.bracket_coords(&vecops::unit(self.ambient, i), &y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subspace spanned by all brackets `[x, y]` with `x, y` in `self`.
    pub fn derived(&self, algebra: &LieAlgebra<S>) -> Self {
        let basis = self.basis();
        let mut brackets = Vec::new();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                brackets.push(algebra.bracket_coords(x, y));
            }
        }
        Self::span(self.ambient, &brackets)
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.basis()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

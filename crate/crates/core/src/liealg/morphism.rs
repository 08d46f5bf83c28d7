use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::{vecops, Matrix};
use crate::liealg::{Functional, LieAlgebra, Subspace, Vector};
use crate::scalar::Scalar;

/// A Lie algebra homomorphism given by its matrix (target dim × source dim).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<S> {
    source: Arc<LieAlgebra<S>>,
    target: Arc<LieAlgebra<S>>,
    matrix: Matrix<S>,
    rank: usize,
}

impl<S: Scalar> Morphism<S> {
    /// Checks shape and `M[e_i,e_j] = [Me_i, Me_j]` on every basis pair.
    pub fn new(
        source: Arc<LieAlgebra<S>>,
        target: Arc<LieAlgebra<S>>,
        matrix: Matrix<S>,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: matrix.cols(),
            });
        }
        let n = source.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = matrix.mul_vec(source.structure_constants(i, j));
                let rhs = target.bracket_coords(&matrix.column(i), &matrix.column(j));
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { i, j });
                }
            }
        }
        let rank = matrix.rank();
        Ok(Self {
            source,
            target,
            matrix,
            rank,
        })
    }

    pub fn identity(algebra: Arc<LieAlgebra<S>>) -> Self {
        let n = algebra.dim();
        Self {
            source: algebra.clone(),
            target: algebra,
            matrix: Matrix::identity(n),
            rank: n,
        }
    }

    pub fn source(&self) -> &Arc<LieAlgebra<S>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LieAlgebra<S>> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target.dim()
    }

    pub fn require_surjective(&self) -> Result<()> {
        if self.is_surjective() {
            Ok(())
        } else {
            Err(Error::NotSurjective {
                rank: self.rank,
                target_dim: self.target.dim(),
            })
        }
    }

    pub fn apply(&self, x: &Vector<S>) -> Result<Vector<S>> {
        if x.dim() != self.source.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Vector(self.matrix.mul_vec(&x.0)))
    }

    /// `ξ ∘ M`, a functional on the source.
    pub fn dual_apply(&self, xi: &Functional<S>) -> Result<Functional<S>> {
        if xi.dim() != self.target.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Functional(self.matrix.transpose_mul_vec(&xi.0)))
    }

    pub fn kernel(&self) -> Subspace<S> {
        Subspace::span(self.source.dim(), &self.matrix.nullspace())
    }

    pub fn image(&self, s: &Subspace<S>) -> Result<Subspace<S>> {
        if s.ambient_dim() != self.source.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let images: Vec<Vec<S>> = s.basis().iter().map(|v| self.matrix.mul_vec(v)).collect();
        Ok(Subspace::span(self.target.dim(), &images))
    }

    /// `{x : Mx ∈ s}`.
    pub fn preimage(&self, s: &Subspace<S>) -> Result<Subspace<S>> {
        if s.ambient_dim() != self.target.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let condition = s.quotient_map().mul(&self.matrix);
        Ok(Subspace::span(self.source.dim(), &condition.nullspace()))
    }

    /// `self ∘ first`
    pub fn compose_after(&self, first: &Self) -> Result<Self> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::AlgebraMismatch);
        }
        let matrix = self.matrix.mul(&first.matrix);
        let rank = matrix.rank();
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix,
            rank,
        })
    }
}

/// Quotient of `algebra` by an ideal, on the complement basis given by the
/// non-pivot columns of the ideal's echelon basis, together with the
/// projection.
pub fn quotient_by_ideal<S: Scalar>(
    algebra: &Arc<LieAlgebra<S>>,
    ideal: &Subspace<S>,
) -> Result<(Arc<LieAlgebra<S>>, Morphism<S>)> {
    if !ideal.is_ideal(algebra)? {
        return Err(Error::NotAnIdeal);
    }
    let projection = ideal.quotient_map();
    let complement = ideal.complement_indices();
    let n = algebra.dim();
    let mut entries = Vec::new();
    for (a, &ca) in complement.iter().enumerate() {
        for (b, &cb) in complement.iter().enumerate().skip(a + 1) {
            let image = projection.mul_vec(algebra.structure_constants(ca, cb));
            let coeffs: Vec<(usize, S)> = image
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !coeffs.is_empty() {
                entries.push(super::BracketEntry { i: a, j: b, coeffs });
            }
        }
    }
    let names = complement
        .iter()
        .map(|&c| algebra.basis_names()[c].clone())
        .collect();
    let name = if ideal.dim() == 0 {
        algebra.name().to_string()
    } else {
        format!("{}/ideal{}", algebra.name(), ideal.dim())
    };
    let quotient = Arc::new(LieAlgebra::new(name, names, &entries)?);
    debug_assert_eq!(projection.cols(), n);
    let morphism = Morphism::new(algebra.clone(), quotient.clone(), projection)?;
    Ok((quotient, morphism))
}

/// Restriction of `ξ` to `s`, in the coordinates of `s`'s echelon basis.
pub fn restrict_functional<S: Scalar>(xi: &Functional<S>, s: &Subspace<S>) -> Result<Vec<S>> {
    if xi.dim() != s.ambient_dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(s.basis().iter().map(|b| vecops::dot(&xi.0, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;
    use crate::Rational;

    type Q = Rational;

    fn e(n: usize, i: usize) -> Vec<Q> {
        vecops::unit(n, i)
    }

    #[test]
    fn filiform_mod_center_is_heisenberg() {
        let f4 = Arc::new(catalog::filiform::<Q>(4).unwrap());
        let center = Subspace::span(4, &[e(4, 3)]);
        let (q, p) = quotient_by_ideal(&f4, &center).unwrap();
        assert_eq!(q.dim(), 3);
        // oracle: induced bracket of coset representatives
        assert_eq!(q.structure_constants(0, 1), e(3, 2).as_slice());
        assert!(vecops::is_zero(q.structure_constants(0, 2)));
        assert!(vecops::is_zero(q.structure_constants(1, 2)));
        let expected = Matrix::from_fn(3, 4, |i, j| if i == j { Q::from_int(1) } else { Q::from_int(0) });
        assert_eq!(p.matrix(), &expected);
        assert!(p.is_surjective());
        assert_eq!(p.kernel(), center);
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let h3 = Arc::new(catalog::heisenberg::<Q>(3).unwrap());
        let (q, p) = quotient_by_ideal(&h3, &Subspace::zero(3)).unwrap();
        assert_eq!(q.as_ref(), h3.as_ref());
        assert_eq!(p.matrix(), &Matrix::identity(3));
    }

    #[test]
    fn heisenberg_mod_center_is_abelian() {
        let h3 = Arc::new(catalog::heisenberg::<Q>(3).unwrap());
        let (q, _) = quotient_by_ideal(&h3, &h3.center()).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.nilpotency_class(), 1);
    }

    #[test]
    fn non_ideal_rejected() {
        let h3 = Arc::new(catalog::heisenberg::<Q>(3).unwrap());
        let s = Subspace::span(3, &[e(3, 0)]);
        assert_eq!(quotient_by_ideal(&h3, &s).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn kernel_preimage_restriction() {
        let f4 = Arc::new(catalog::filiform::<Q>(4).unwrap());
        let (_, p) = quotient_by_ideal(&f4, &f4.center()).unwrap();
        assert_eq!(p.kernel(), Subspace::span(4, &[e(4, 3)]));
        let s = Subspace::span(3, &[e(3, 1), e(3, 2)]);
        let pre = p.preimage(&s).unwrap();
        assert_eq!(pre, Subspace::span(4, &[e(4, 1), e(4, 2), e(4, 3)]));
        assert_eq!(pre.dim(), s.dim() + p.kernel().dim());

        let xi = Functional::from_ints(&[0, 0, 1]);
        let r = restrict_functional(&xi, &Subspace::span(3, &[e(3, 1), e(3, 2)])).unwrap();
        assert_eq!(r, vec![Q::from_int(0), Q::from_int(1)]);
    }

    #[test]
    fn non_homomorphism_rejected() {
        let h3 = Arc::new(catalog::heisenberg::<Q>(3).unwrap());
        let ab = Arc::new(LieAlgebra::<Q>::abelian(3));
        // identity matrix from abelian to h3 does not preserve brackets
        assert!(matches!(
            Morphism::new(ab, h3, Matrix::identity(3)),
            Err(Error::NotAHomomorphism { .. })
        ));
    }
}

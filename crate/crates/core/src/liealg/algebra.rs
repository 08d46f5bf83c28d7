use crate::error::{Error, Result};
use crate::exactmath::{vecops, Matrix};
use crate::liealg::{Subspace, Vector};
use crate::scalar::Scalar;

/// One row of a structure-constant table: `[e_i, e_j] = Σ_k c_k e_k`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry<S> {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, S)>,
}

/// A validated nilpotent Lie algebra given by structure constants.
///
/// Antisymmetry holds by construction, the Jacobi identity and nilpotency
/// are checked in [`LieAlgebra::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra<S> {
    name: String,
    basis_names: Vec<String>,
    // table[i * n + j] = coordinates of [e_i, e_j]
    table: Vec<Vec<S>>,
    class: usize,
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        entries: &[BracketEntry<S>],
    ) -> Result<Self> {
        let n = basis_names.len();
        let mut table = vec![vec![S::zero(); n]; n * n];
        let mut seen = vec![false; n * n];
        for e in entries {
            let bad = |reason: &str| Error::BadBracket {
                i: e.i,
                j: e.j,
                reason: reason.to_string(),
            };
            if e.i >= e.j {
                return Err(bad("indices must satisfy i < j"));
            }
            if e.j >= n {
                return Err(bad("index out of range"));
            }
            if std::mem::replace(&mut seen[e.i * n + e.j], true) {
                return Err(bad("duplicate entry"));
            }
            for (k, c) in &e.coeffs {
                if *k >= n {
                    return Err(bad("result index out of range"));
                }
                table[e.i * n + e.j][*k] = table[e.i * n + e.j][*k].clone() + c.clone();
                table[e.j * n + e.i][*k] = table[e.j * n + e.i][*k].clone() - c.clone();
            }
        }
        let mut algebra = Self {
            name: name.into(),
            basis_names,
            table,
            class: 0,
        };
        algebra.check_jacobi()?;
        algebra.class = algebra.compute_class()?;
        Ok(algebra)
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        Self::new(format!("abelian{n}"), names, &[]).expect("abelian algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Length of the lower central series (number of nonzero terms).
    pub fn nilpotency_class(&self) -> usize {
        self.class
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[S] {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero brackets with `i < j`, in row-major order.
    pub fn bracket_entries(&self) -> Vec<BracketEntry<S>> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coeffs: Vec<(usize, S)> = self
                    .structure_constants(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !coeffs.is_empty() {
                    out.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Vector<S>, y: &Vector<S>) -> Result<Vector<S>> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Vector(self.bracket_coords(&x.0, &y.0)))
    }

    /// Bracket on raw coordinates; lengths are assumed to match.
    pub fn bracket_coords(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                vecops::axpy(&mut out, &(xi.clone() * yj.clone()), &self.table[i * n + j]);
            }
        }
        out
    }

    /// Matrix of `ad x`; column `j` holds `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[S]) -> Matrix<S> {
        let n = self.dim();
        let columns: Vec<Vec<S>> = (0..n)
            .map(|j| self.bracket_coords(x, &vecops::unit(n, j)))
            .collect();
        Matrix::from_columns(n, &columns)
    }

    /// `𝔤 ⊇ [𝔤,𝔤] ⊇ [𝔤,[𝔤,𝔤]] ⊇ … ⊇ {0}`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> Vec<Subspace<S>> {
        self.descend().expect("validated algebras are nilpotent")
    }

    /// `{x : [x, e_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace<S> {
        let n = self.dim();
        // rows indexed by (j, k): Σ_i x_i c_{ij}^k = 0
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.table[i * n + j][k].clone()).collect());
            }
        }
        Subspace::span(n, &Matrix::from_rows(n, rows).nullspace())
    }

    /// Block-diagonal direct sum; basis names get a `[block]` suffix.
    pub fn direct_sum(name: impl Into<String>, blocks: &[&Self]) -> Self {
        let mut names = Vec::new();
        let mut entries = Vec::new();
        let mut offset = 0;
        for (b, block) in blocks.iter().enumerate() {
            names.extend(block.basis_names.iter().map(|s| format!("{s}[{b}]")));
            for e in block.bracket_entries() {
                entries.push(BracketEntry {
                    i: e.i + offset,
                    j: e.j + offset,
                    coeffs: e.coeffs.into_iter().map(|(k, c)| (k + offset, c)).collect(),
                });
            }
            offset += block.dim();
        }
        Self::new(name, names, &entries).expect("direct sum of valid algebras is valid")
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let defect = self.jacobiator(i, j, k);
                    if !vecops::is_zero(&defect) {
                        return Err(Error::JacobiViolation {
                            i,
                            j,
                            k,
                            defect: defect.iter().map(ToString::to_string).collect(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        let n = self.dim();
        let e = |a: usize| vecops::unit::<S>(n, a);
        let t1 = self.bracket_coords(self.structure_constants(i, j), &e(k));
        let t2 = self.bracket_coords(self.structure_constants(j, k), &e(i));
        let t3 = self.bracket_coords(self.structure_constants(k, i), &e(j));
        vecops::add(&vecops::add(&t1, &t2), &t3)
    }

    fn descend(&self) -> Result<Vec<Subspace<S>>> {
        let n = self.dim();
        let mut series = vec![Subspace::full(n)];
        loop {
            let last = series.last().expect("nonempty");
            if last.dim() == 0 {
                return Ok(series);
            }
            let mut brackets = Vec::new();
            for i in 0..n {
                for y in last.basis() {
                    brackets.push(self.bracket_coords(&vecops::unit(n, i), &y));
                }
            }
            let next = Subspace::span(n, &brackets);
            if next.dim() == last.dim() {
                return Err(Error::NotNilpotent {
                    stable_basis: next.to_string_rows(),
                });
            }
            series.push(next);
        }
    }

    fn compute_class(&self) -> Result<usize> {
        Ok(self.descend()?.len() - 1)
    }
}

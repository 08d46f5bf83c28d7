//! ℤ-spans of rational vectors.
//!
//! Lattices here are generated by rational vectors; membership and equality
//! questions reduce to integer row operations, which stay exact over ℚ
//! because every step is `row_i -= ⌊a_i / a_p⌋ · row_p`.

use super::matrix::Matrix;
use crate::scalar::Scalar;

fn abs<S: Scalar>(x: &S) -> S {
    if *x < S::zero() {
        -x.clone()
    } else {
        x.clone()
    }
}

/// A row-echelon ℤ-basis of the lattice generated by `vectors`
/// (Euclidean reduction column by column; zero rows dropped).
pub fn integer_span_basis<S: Scalar>(dim: usize, vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut rows: Vec<Vec<S>> = vectors.to_vec();
    let mut top = 0;
    for col in 0..dim {
        loop {
            let active: Vec<usize> = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if active.len() <= 1 {
                if let Some(&r) = active.first() {
                    rows.swap(top, r);
                    top += 1;
                }
                break;
            }
            let pivot = *active
                .iter()
                .min_by(|&&a, &&b| abs(&rows[a][col]).cmp(&abs(&rows[b][col])))
                .expect("nonempty");
            rows.swap(top, pivot);
            let lead = rows[top][col].clone();
            for r in (top + 1)..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let k = (rows[r][col].clone() / lead.clone()).floor();
                let pivot_row = rows[top].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = x.clone() - k.clone() * p.clone();
                }
            }
        }
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

/// Coordinates of `v` in a linearly independent `basis`, when they are all
/// integers.
pub fn integer_coordinates<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let m = Matrix::from_columns(v.len(), basis);
    let coords = m.solve(v)?;
    coords.iter().all(|c| c.is_integer()).then_some(coords)
}

/// Whether `v` lies in the ℤ-span of arbitrary (possibly dependent) generators.
pub fn in_integer_span<S: Scalar>(generators: &[Vec<S>], v: &[S]) -> bool {
    let basis = integer_span_basis(v.len(), generators);
    integer_coordinates(&basis, v).is_some()
}

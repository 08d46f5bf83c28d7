//! Built-in nilpotent Lie algebras.
//!
//! | family               | dimension     | class |
//! |----------------------|---------------|-------|
//! | `abelian<n>`         | n             | 1     |
//! | `heisenberg<2k+1>`   | 2k+1          | 2     |
//! | `filiform<n>`        | n             | n−1   |
//! | `uppertriangular<m>` | m(m−1)/2      | m−1   |

use crate::error::{Error, Result};
use crate::liealg::{BracketEntry, LieAlgebra};
use crate::scalar::Scalar;

/// The catalog entries exercised by the test and acceptance suites.
pub const STANDARD: [&str; 12] = [
    "abelian1",
    "abelian2",
    "abelian3",
    "abelian4",
    "abelian5",
    "abelian6",
    "heisenberg3",
    "heisenberg5",
    "filiform4",
    "filiform5",
    "uppertriangular3",
    "uppertriangular4",
];

/// Documented nilpotency class of a catalog entry.
pub fn documented_class(name: &str) -> Option<usize> {
    let (family, n) = split_name(name)?;
    match family {
        "abelian" => Some(usize::from(n > 0)),
        "heisenberg" => Some(2),
        "filiform" => Some(n - 1),
        "uppertriangular" => Some(n - 1),
        _ => None,
    }
}

fn split_name(name: &str) -> Option<(&str, usize)> {
    let digits = name.find(|c: char| c.is_ascii_digit())?;
    let (family, n) = name.split_at(digits);
    Some((family, n.parse().ok()?))
}

pub fn by_name<S: Scalar>(name: &str) -> Result<LieAlgebra<S>> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    let (family, n) = split_name(name).ok_or_else(unknown)?;
    match family {
        "abelian" => Ok(LieAlgebra::abelian(n)),
        "heisenberg" => heisenberg(n),
        "filiform" => filiform(n),
        "uppertriangular" => upper_triangular(n),
        _ => Err(unknown()),
    }
}

fn unit_entry<S: Scalar>(i: usize, j: usize, k: usize, sign: i64) -> BracketEntry<S> {
    BracketEntry {
        i,
        j,
        coeffs: vec![(k, S::from_int(sign))],
    }
}

/// Basis `x₁…x_k, y₁…y_k, z` with `[x_i, y_i] = z`.
pub fn heisenberg<S: Scalar>(dim: usize) -> Result<LieAlgebra<S>> {
    if dim < 3 || dim % 2 == 0 {
        return Err(Error::UnknownCatalog(format!("heisenberg{dim}")));
    }
    let k = (dim - 1) / 2;
    let mut names: Vec<String> = Vec::with_capacity(dim);
    if k == 1 {
        names.extend(["x", "y", "z"].map(String::from));
    } else {
        names.extend((1..=k).map(|i| format!("x{i}")));
        names.extend((1..=k).map(|i| format!("y{i}")));
        names.push("z".into());
    }
    let entries: Vec<_> = (0..k).map(|i| unit_entry(i, k + i, 2 * k, 1)).collect();
    LieAlgebra::new(format!("heisenberg{dim}"), names, &entries)
}

/// `[e₁, e_j] = e_{j+1}` for `2 ≤ j < n`.
pub fn filiform<S: Scalar>(dim: usize) -> Result<LieAlgebra<S>> {
    if dim < 2 {
        return Err(Error::UnknownCatalog(format!("filiform{dim}")));
    }
    let names = (1..=dim).map(|i| format!("e{i}")).collect();
    let entries: Vec<_> = (1..dim - 1).map(|j| unit_entry(0, j, j + 1, 1)).collect();
    LieAlgebra::new(format!("filiform{dim}"), names, &entries)
}

/// Strictly upper triangular `m × m` matrices, basis `E_ij` (`i < j`) in
/// lexicographic order, `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
pub fn upper_triangular<S: Scalar>(m: usize) -> Result<LieAlgebra<S>> {
    if m < 2 {
        return Err(Error::UnknownCatalog(format!("uppertriangular{m}")));
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .collect();
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("valid pair");
    let names = pairs
        .iter()
        .map(|(i, j)| format!("E{}{}", i + 1, j + 1))
        .collect();
    let mut entries = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate().skip(a + 1) {
            let mut coeffs = Vec::new();
            if j == k {
                coeffs.push((index((i, l)), S::one()));
            }
            if l == i {
                coeffs.push((index((k, j)), -S::one()));
            }
            if !coeffs.is_empty() {
                entries.push(BracketEntry { i: a, j: b, coeffs });
            }
        }
    }
    LieAlgebra::new(format!("uppertriangular{m}"), names, &entries)
}

//! JSON file formats. Rationals are always strings (`"p/q"` or `"p"`).
//!
//! ```json
//! {"name": "heisenberg3", "dim": 3, "basis": ["x", "y", "z"],
//!  "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}]}
//! ```
//!
//! Algebra references inside tower, product and morphism files are either
//! `"catalog:NAME"`, a path (relative to the referring file) or an inline
//! algebra object.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::liealg::{catalog, BracketEntry, Flag, Functional, Lattice, LieAlgebra, Morphism, Vector};
use crate::prolie::{LatticeRule, ProductFamily, QuotientTower};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketFile {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordsFile {
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub generators: Vec<Vec<String>>,
}

/// A flag given by its adapted basis `X₁, …, X_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagFile {
    pub vectors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChainFile {
    Geometric { base: Vec<Vec<String>>, ratio: String },
    Explicit { lattices: Vec<LatticeFile> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    pub algebra: AlgebraRef,
    pub chain: ChainFile,
    pub max_level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorRef {
    #[serde(rename = "ref")]
    pub reference: AlgebraRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProductFile {
    Factors {
        factors: Vec<FactorRef>,
    },
    Rule {
        rule: String,
        factor: AlgebraRef,
        #[serde(default)]
        count_hint: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    /// Row-major, `dim target` rows of length `dim source`.
    pub matrix: Vec<Vec<String>>,
}

/// One level of a tower reconciliation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerLevelFile {
    pub level: usize,
    pub coords: Vec<String>,
}

/// One level of a product reconciliation; indices of `entries` must lie in
/// `indices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductLevelFile {
    pub indices: Vec<usize>,
    #[serde(default)]
    pub entries: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelsFile<L> {
    pub coarse: L,
    pub fine: L,
}

/// Per-index product dual: `{"entries": {"0": ["2"], "3": ["-1/2"]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualFile {
    pub entries: BTreeMap<String, Vec<String>>,
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        input: path.display().to_string(),
        reason: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

pub fn parse_coords<S: Scalar>(coords: &[String]) -> Result<Vec<S>> {
    coords.iter().map(|c| S::parse(c)).collect()
}

/// Parses and length-checks one coordinate list.
pub fn parse_coords_dim<S: Scalar>(coords: &[String], dim: usize) -> Result<Vec<S>> {
    if coords.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: coords.len(),
        });
    }
    parse_coords(coords)
}

fn parse_index(key: &str) -> Result<usize> {
    key.parse().map_err(|_| Error::Parse {
        input: key.to_string(),
        reason: "expected a non-negative integer index".into(),
    })
}

impl AlgebraFile {
    pub fn to_algebra<S: Scalar>(&self) -> Result<LieAlgebra<S>> {
        if self.basis.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: self.basis.len(),
            });
        }
        let entries = self
            .brackets
            .iter()
            .map(|b| {
                let coeffs = b
                    .coeffs
                    .iter()
                    .map(|(k, v)| Ok((parse_index(k)?, S::parse(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(BracketEntry { i: b.i, j: b.j, coeffs })
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::new(self.name.clone(), self.basis.clone(), &entries)
    }

    pub fn from_algebra<S: Scalar>(algebra: &LieAlgebra<S>) -> Self {
        Self {
            name: algebra.name().to_string(),
            dim: algebra.dim(),
            basis: algebra.basis_names().to_vec(),
            brackets: algebra
                .bracket_entries()
                .into_iter()
                .map(|e| BracketFile {
                    i: e.i,
                    j: e.j,
                    coeffs: e.coeffs.iter().map(|(k, c)| (k.to_string(), c.to_string())).collect(),
                })
                .collect(),
        }
    }
}

/// Resolves `catalog:NAME` or a file path, relative paths against `base`.
pub fn load_algebra<S: Scalar>(reference: &str, base: &Path) -> Result<LieAlgebra<S>> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        return catalog::by_name(name);
    }
    read_json::<AlgebraFile>(&base.join(reference))?.to_algebra()
}

impl AlgebraRef {
    pub fn resolve<S: Scalar>(&self, base: &Path) -> Result<LieAlgebra<S>> {
        match self {
            Self::Named(r) => load_algebra(r, base),
            Self::Inline(file) => file.to_algebra(),
        }
    }
}

/// Directory that relative references inside `path` are resolved against.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

impl CoordsFile {
    pub fn to_functional<S: Scalar>(&self, dim: usize) -> Result<Functional<S>> {
        Ok(Functional(parse_coords_dim(&self.coords, dim)?))
    }

    pub fn to_vector<S: Scalar>(&self, dim: usize) -> Result<Vector<S>> {
        Ok(Vector(parse_coords_dim(&self.coords, dim)?))
    }
}

impl LatticeFile {
    pub fn to_lattice<S: Scalar>(&self, algebra: &LieAlgebra<S>) -> Result<Lattice<S>> {
        let gens = self
            .generators
            .iter()
            .map(|g| parse_coords_dim(g, algebra.dim()))
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(algebra, gens)
    }
}

impl FlagFile {
    pub fn to_flag<S: Scalar>(&self, algebra: &LieAlgebra<S>) -> Result<Flag<S>> {
        let dirs = self
            .vectors
            .iter()
            .map(|v| parse_coords_dim(v, algebra.dim()))
            .collect::<Result<Vec<_>>>()?;
        Flag::from_directions(algebra, dirs)
    }
}

impl TowerFile {
    pub fn to_tower<S: Scalar>(&self, base: &Path) -> Result<QuotientTower<S>> {
        let algebra = Arc::new(self.algebra.resolve::<S>(base)?);
        let (rule, default_max) = match &self.chain {
            ChainFile::Geometric { base: gens, ratio } => {
                let lattice = LatticeFile {
                    generators: gens.clone(),
                }
                .to_lattice(&algebra)?;
                let ratio = ratio.trim().parse::<u64>().map_err(|_| Error::Parse {
                    input: ratio.clone(),
                    reason: "ratio must be a positive integer".into(),
                })?;
                (LatticeRule::Geometric { base: lattice, ratio }, 1)
            }
            ChainFile::Explicit { lattices } => {
                let lattices = lattices
                    .iter()
                    .map(|l| l.to_lattice(&algebra))
                    .collect::<Result<Vec<_>>>()?;
                let n = lattices.len();
                (LatticeRule::Explicit(lattices), n)
            }
        };
        QuotientTower::new(algebra, rule, self.max_level.unwrap_or(default_max))
    }
}

impl ProductFile {
    pub fn to_family<S: Scalar>(&self, base: &Path) -> Result<ProductFamily<S>> {
        match self {
            Self::Factors { factors } => Ok(ProductFamily::finite(
                factors
                    .iter()
                    .map(|f| f.reference.resolve(base).map(Arc::new))
                    .collect::<Result<Vec<_>>>()?,
            )),
            Self::Rule {
                rule,
                factor,
                count_hint,
            } => {
                if rule != "repeat" {
                    return Err(Error::Schema(format!("unknown product rule {rule:?}")));
                }
                Ok(ProductFamily::repeat(Arc::new(factor.resolve(base)?), *count_hint))
            }
        }
    }
}

impl MorphismFile {
    pub fn to_morphism<S: Scalar>(&self, base: &Path) -> Result<Morphism<S>> {
        let source = Arc::new(self.source.resolve::<S>(base)?);
        let target = Arc::new(self.target.resolve::<S>(base)?);
        if self.matrix.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: self.matrix.len(),
            });
        }
        let rows = self
            .matrix
            .iter()
            .map(|r| parse_coords_dim(r, source.dim()))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source.clone(), target, Matrix::from_rows(source.dim(), rows))
    }
}

/// Parses per-index entries, checking each against its factor.
pub fn parse_entries<S: Scalar>(
    family: &ProductFamily<S>,
    entries: &BTreeMap<String, Vec<String>>,
) -> Result<BTreeMap<usize, Functional<S>>> {
    entries
        .iter()
        .map(|(k, v)| {
            let j = parse_index(k)?;
            let dim = family.factor(j)?.dim();
            Ok((j, Functional(parse_coords_dim(v, dim)?)))
        })
        .collect()
}

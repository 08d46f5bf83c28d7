//! Pro-Lie approximation data: lattice-quotient towers `G̃/Γ_k` and direct
//! products `Π_j G_j` with finitely supported duals, together with the
//! bookkeeping that checks two finite levels present the same dual element.
//!
//! Bonding maps always run from the finer level to the coarser one: for a
//! tower, `G̃/Γ_{k+1} → G̃/Γ_k` (induced by `Γ_{k+1} ⊆ Γ_k`, identity on the
//! Lie algebra); for a product, the block projection `G_{F₂} → G_{F₁}` for
//! `F₁ ⊆ F₂`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::kirillov::{induce_descriptor, is_integral, orbit_integral, vergne_polarization, InducedRepDescriptor};
use crate::liealg::{BracketEntry, Flag, Functional, Lattice, LieAlgebra, Morphism};
use crate::orbits::{Membership, OrbitDescriptor};
use crate::scalar::Scalar;

/// How the lattices of a tower are produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeRule<S> {
    /// `Γ_k = m^{k−1}·Γ₁`.
    Geometric { base: Lattice<S>, ratio: u64 },
    /// `[Γ₁, …, Γ_K]`.
    Explicit(Vec<Lattice<S>>),
}

/// A chain `Γ₁ ⊇ Γ₂ ⊇ ⋯` of central lattices in one algebra, materialized
/// up to `max_level`.
#[derive(Debug)]
pub struct QuotientTower<S> {
    algebra: Arc<LieAlgebra<S>>,
    rule: LatticeRule<S>,
    max_level: usize,
    levels: RwLock<BTreeMap<usize, Lattice<S>>>,
}

impl<S: Scalar> QuotientTower<S> {
    /// Validates the rule and the chain condition on every level up to
    /// `max_level`.
    pub fn new(algebra: Arc<LieAlgebra<S>>, rule: LatticeRule<S>, max_level: usize) -> Result<Self> {
        if max_level == 0 {
            return Err(Error::InvalidLattice("a tower needs at least one level".into()));
        }
        match &rule {
            LatticeRule::Geometric { base, ratio } => {
                if *ratio < 2 {
                    return Err(Error::InvalidLattice(format!(
                        "geometric ratio must be at least 2, got {ratio}"
                    )));
                }
                if base.ambient_dim() != algebra.dim() {
                    return Err(Error::AlgebraMismatch);
                }
            }
            LatticeRule::Explicit(lattices) => {
                if max_level > lattices.len() {
                    return Err(Error::LevelOutOfRange {
                        level: max_level,
                        max: lattices.len(),
                    });
                }
                if lattices.iter().any(|l| l.ambient_dim() != algebra.dim()) {
                    return Err(Error::AlgebraMismatch);
                }
            }
        }
        let tower = Self {
            algebra,
            rule,
            max_level,
            levels: RwLock::new(BTreeMap::new()),
        };
        for k in 1..max_level {
            let (coarse, fine) = (tower.lattice_at(k), tower.lattice_at(k + 1));
            if !fine.is_sublattice_of(&coarse) {
                return Err(Error::InvalidLattice(format!(
                    "level {} is not contained in level {k}",
                    k + 1
                )));
            }
        }
        Ok(tower)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        &self.algebra
    }

    pub fn rule(&self) -> &LatticeRule<S> {
        &self.rule
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// `(𝔤, Γ_k)` for `1 ≤ k ≤ K`.
    pub fn level(&self, k: usize) -> Result<(Arc<LieAlgebra<S>>, Lattice<S>)> {
        if k == 0 || k > self.max_level {
            return Err(Error::LevelOutOfRange {
                level: k,
                max: self.max_level,
            });
        }
        Ok((self.algebra.clone(), self.lattice_at(k)))
    }

    /// Highest level that can be produced: unbounded for a geometric rule.
    fn producible(&self) -> Option<usize> {
        match &self.rule {
            LatticeRule::Geometric { .. } => None,
            LatticeRule::Explicit(lattices) => Some(lattices.len()),
        }
    }

    /// Level `k ≥ 1`, memoized insert-once. Geometric rules extend past `K`.
    fn lattice_at(&self, k: usize) -> Lattice<S> {
        if let Some(l) = self.levels.read().expect("tower lock poisoned").get(&k) {
            return l.clone();
        }
        let lattice = match &self.rule {
            LatticeRule::Geometric { base, ratio } => {
                let mut factor = S::one();
                for _ in 1..k {
                    factor = factor * S::from_int(*ratio as i64);
                }
                base.scaled(&factor)
            }
            LatticeRule::Explicit(lattices) => lattices[k - 1].clone(),
        };
        self.levels
            .write()
            .expect("tower lock poisoned")
            .entry(k)
            .or_insert(lattice)
            .clone()
    }

    /// Smallest `k ≤ max_k` with `ξ(Γ_k) ⊆ ℤ`. A geometric rule is followed
    /// beyond the materialized levels; an explicit chain stops at its end.
    pub fn integrality_level(&self, xi: &Functional<S>, max_k: usize) -> Result<Option<usize>> {
        let top = self.producible().map_or(max_k, |p| p.min(max_k));
        for k in 1..=top {
            if is_integral(xi, &self.lattice_at(k))? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Checks that integrality at levels `1..=max_k` is exactly "from the
    /// minimal level on".
    pub fn monotone_up_to(&self, xi: &Functional<S>, max_k: usize) -> Result<bool> {
        let top = self.producible().map_or(max_k, |p| p.min(max_k));
        let first = self.integrality_level(xi, top)?;
        for k in 1..=top {
            let expected = first.is_some_and(|f| k >= f);
            if is_integral(xi, &self.lattice_at(k))? != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

type Factory<S> = dyn Fn(usize) -> Result<LieAlgebra<S>> + Send + Sync;

enum FactorRule<S> {
    Finite(Vec<Arc<LieAlgebra<S>>>),
    Generated {
        factory: Box<Factory<S>>,
        count: Option<usize>,
    },
}

/// An indexed family `{G_j}` of nilpotent groups given by their algebras,
/// either as a finite list or lazily through a per-index factory.
pub struct ProductFamily<S> {
    rule: FactorRule<S>,
    memo: RwLock<BTreeMap<usize, Arc<LieAlgebra<S>>>>,
}

impl<S> fmt::Debug for ProductFamily<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.rule {
            FactorRule::Finite(v) => format!("finite({})", v.len()),
            FactorRule::Generated { count, .. } => format!("generated({count:?})"),
        };
        f.debug_struct("ProductFamily").field("rule", &kind).finish()
    }
}

impl<S: Scalar> ProductFamily<S> {
    pub fn finite(factors: Vec<Arc<LieAlgebra<S>>>) -> Self {
        Self {
            rule: FactorRule::Finite(factors),
            memo: RwLock::new(BTreeMap::new()),
        }
    }

    /// A family whose factor `j` is produced on demand; `count = None`
    /// means countably many.
    pub fn generated(
        factory: impl Fn(usize) -> Result<LieAlgebra<S>> + Send + Sync + 'static,
        count: Option<usize>,
    ) -> Self {
        Self {
            rule: FactorRule::Generated {
                factory: Box::new(factory),
                count,
            },
            memo: RwLock::new(BTreeMap::new()),
        }
    }

    /// The same factor at every index.
    pub fn repeat(factor: Arc<LieAlgebra<S>>, count: Option<usize>) -> Self {
        Self::generated(move |_| Ok(factor.as_ref().clone()), count)
    }

    /// Number of factors, `None` if countably infinite.
    pub fn len(&self) -> Option<usize> {
        match &self.rule {
            FactorRule::Finite(v) => Some(v.len()),
            FactorRule::Generated { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Factor `j`, materialized at most once.
    pub fn factor(&self, j: usize) -> Result<Arc<LieAlgebra<S>>> {
        if self.len().is_some_and(|n| j >= n) {
            return Err(Error::BadIndex(j));
        }
        match &self.rule {
            FactorRule::Finite(v) => Ok(v[j].clone()),
            FactorRule::Generated { factory, .. } => {
                if let Some(f) = self.memo.read().expect("factor lock poisoned").get(&j) {
                    return Ok(f.clone());
                }
                let built = Arc::new(factory(j)?);
                Ok(self
                    .memo
                    .write()
                    .expect("factor lock poisoned")
                    .entry(j)
                    .or_insert(built)
                    .clone())
            }
        }
    }

    /// Number of factors materialized so far by a generated family.
    pub fn materialized(&self) -> usize {
        match &self.rule {
            FactorRule::Finite(v) => v.len(),
            FactorRule::Generated { .. } => self.memo.read().expect("factor lock poisoned").len(),
        }
    }

    /// `𝔤_F = ⊕_{j∈F} 𝔤_j` with its block layout. `F` is sorted and
    /// deduplicated first.
    pub fn product_projection(&self, indices: &[usize]) -> Result<ProductLevel<S>> {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        let factors = indices
            .iter()
            .map(|&j| self.factor(j))
            .collect::<Result<Vec<_>>>()?;
        let mut names = Vec::new();
        let mut entries = Vec::new();
        let mut offsets = Vec::with_capacity(indices.len());
        let mut offset = 0;
        for (&j, factor) in indices.iter().zip(&factors) {
            offsets.push(offset);
            names.extend(factor.basis_names().iter().map(|s| format!("{s}[{j}]")));
            entries.extend(factor.bracket_entries().into_iter().map(|e| BracketEntry {
                i: e.i + offset,
                j: e.j + offset,
                coeffs: e.coeffs.into_iter().map(|(k, c)| (k + offset, c)).collect(),
            }));
            offset += factor.dim();
        }
        let label: Vec<String> = indices.iter().map(ToString::to_string).collect();
        let algebra = LieAlgebra::new(format!("product{{{}}}", label.join(",")), names, &entries)?;
        Ok(ProductLevel {
            indices,
            factors,
            offsets,
            algebra: Arc::new(algebra),
        })
    }

    /// Canonical finite-support form of a per-index dual element.
    pub fn normalize_dual(&self, raw: &RawDual<S>) -> Result<DualLimitFunctional<S>> {
        let mut support = BTreeMap::new();
        let mut keep = |j: usize, eta: Functional<S>| -> Result<()> {
            let dim = self.factor(j)?.dim();
            if eta.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: eta.dim(),
                });
            }
            if !eta.is_zero() {
                support.insert(j, eta);
            }
            Ok(())
        };
        match raw {
            RawDual::Entries(entries) => {
                for (&j, eta) in entries {
                    keep(j, eta.clone())?;
                }
            }
            RawDual::Rule { entry, bound } => {
                let Some(bound) = bound.or(self.len()) else {
                    return Err(Error::InfiniteSupport);
                };
                for j in 0..bound {
                    keep(j, entry(j))?;
                }
            }
        }
        Ok(DualLimitFunctional::Product { support })
    }
}

/// Per-index input to [`ProductFamily::normalize_dual`].
pub enum RawDual<S> {
    /// Explicit entries; missing indices are zero.
    Entries(BTreeMap<usize, Functional<S>>),
    /// `entry(j)` for every index; `bound` promises zeros from `bound` on.
    Rule {
        entry: Box<dyn Fn(usize) -> Functional<S>>,
        bound: Option<usize>,
    },
}

/// A finite level `𝔤_F` of a product family.
#[derive(Clone, Debug)]
pub struct ProductLevel<S> {
    indices: Vec<usize>,
    factors: Vec<Arc<LieAlgebra<S>>>,
    offsets: Vec<usize>,
    algebra: Arc<LieAlgebra<S>>,
}

impl<S: Scalar> ProductLevel<S> {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        &self.algebra
    }

    /// Start of each block in the product coordinates.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    fn block(&self, j: usize) -> Result<usize> {
        self.indices.binary_search(&j).map_err(|_| Error::BadIndex(j))
    }

    /// Assembles `η = (η_j)_{j∈F}`; indices outside `F` are rejected.
    pub fn assemble_dual(&self, entries: &BTreeMap<usize, Functional<S>>) -> Result<Functional<S>> {
        let mut coords = vec![S::zero(); self.algebra.dim()];
        for (&j, eta) in entries {
            let b = self.block(j)?;
            let dim = self.factors[b].dim();
            if eta.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: eta.dim(),
                });
            }
            coords[self.offsets[b]..self.offsets[b] + dim].clone_from_slice(&eta.0);
        }
        Ok(Functional(coords))
    }

    /// Inverse of [`Self::assemble_dual`], keeping zero blocks.
    pub fn split_dual(&self, xi: &Functional<S>) -> Result<BTreeMap<usize, Functional<S>>> {
        if xi.dim() != self.algebra.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self
            .indices
            .iter()
            .zip(&self.factors)
            .zip(&self.offsets)
            .map(|((&j, f), &o)| (j, Functional(xi.0[o..o + f.dim()].to_vec())))
            .collect())
    }

    /// Block projection `𝔤_self → 𝔤_coarser`; needs `coarser ⊆ self`.
    pub fn projection_onto(&self, coarser: &Self) -> Result<Morphism<S>> {
        let mut m = Matrix::zeros(coarser.algebra.dim(), self.algebra.dim());
        for (b, &j) in coarser.indices.iter().enumerate() {
            let src = self.block(j)?;
            for t in 0..coarser.factors[b].dim() {
                m.set(coarser.offsets[b] + t, self.offsets[src] + t, S::one());
            }
        }
        Morphism::new(self.algebra.clone(), coarser.algebra.clone(), m)
    }
}

/// A dual element of a pro-Lie algebra presented at a finite level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualLimitFunctional<S> {
    /// `ξ` on the tower's algebra, integral on `Γ_level`.
    Tower { level: usize, functional: Functional<S> },
    /// Finitely many nonzero blocks.
    Product { support: BTreeMap<usize, Functional<S>> },
}

impl<S: Scalar> DualLimitFunctional<S> {
    /// Tower form, checked for integrality at its level.
    pub fn at_tower_level(tower: &QuotientTower<S>, level: usize, functional: Functional<S>) -> Result<Self> {
        let (_, lattice) = tower.level(level)?;
        if let Some((generator, g)) = lattice
            .generators()
            .iter()
            .enumerate()
            .find(|(_, g)| !functional.pair(g).is_ok_and(|v| v.is_integer()))
        {
            return Err(Error::NotIntegral {
                generator,
                value: functional.pair(g)?.to_string(),
            });
        }
        Ok(Self::Tower { level, functional })
    }

    /// Indices of the nonzero blocks (empty for the tower form).
    pub fn support(&self) -> Vec<usize> {
        match self {
            Self::Tower { .. } => Vec::new(),
            Self::Product { support } => support.keys().copied().collect(),
        }
    }
}

/// Data presenting a dual element at one finite level.
#[derive(Clone, Debug)]
pub struct LevelData<S> {
    pub algebra: Arc<LieAlgebra<S>>,
    pub functional: Functional<S>,
    pub lattice: Option<Lattice<S>>,
}

/// One named check of a reconciliation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub detail: String,
}

/// Every check run by a successful reconciliation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

fn require_member<S: Scalar>(
    desc: &OrbitDescriptor<S>,
    eta: &Functional<S>,
    check: &str,
    checks: &mut Vec<Check>,
) -> Result<()> {
    match desc.contains(eta)? {
        Membership::Member { .. } => {
            checks.push(Check {
                name: check.to_string(),
                detail: format!("{eta} is on the orbit of {}", desc.base()),
            });
            Ok(())
        }
        other => Err(Error::InconsistentLevels {
            check: format!("{check}: {eta} vs orbit of {} ({})", desc.base(), other.label()),
        }),
    }
}

/// Checks that `coarse` and `fine` present the same dual element, with
/// `bonding: 𝔤_fine → 𝔤_coarse`.
///
/// The pulled-back coarse orbit and the fine orbit must contain each other's
/// base points and `samples` seeded points, and the integrality certificates
/// of both levels must agree.
pub fn reconcile_levels<S: Scalar>(
    coarse: &LevelData<S>,
    fine: &LevelData<S>,
    bonding: &Morphism<S>,
    seed: u64,
    samples: usize,
) -> Result<Verdict> {
    if bonding.source().as_ref() != fine.algebra.as_ref()
        || bonding.target().as_ref() != coarse.algebra.as_ref()
    {
        return Err(Error::AlgebraMismatch);
    }
    bonding.require_surjective()?;
    let pulled = bonding.dual_apply(&coarse.functional)?;
    let coarse_orbit = OrbitDescriptor::with_canonical_flag(&coarse.algebra, coarse.functional.clone())?;
    let pulled_orbit = OrbitDescriptor::with_canonical_flag(&fine.algebra, pulled.clone())?;
    let fine_orbit = OrbitDescriptor::with_canonical_flag(&fine.algebra, fine.functional.clone())?;

    let mut checks = Vec::new();
    require_member(&fine_orbit, &pulled, "pulled-back coarse base on fine orbit", &mut checks)?;
    require_member(&pulled_orbit, &fine.functional, "fine base on pulled-back coarse orbit", &mut checks)?;
    for point in coarse_orbit.sample(seed, samples)? {
        let lifted = bonding.dual_apply(&point)?;
        require_member(&fine_orbit, &lifted, "pulled-back coarse sample on fine orbit", &mut checks)?;
    }
    for point in fine_orbit.sample(seed.wrapping_add(1), samples)? {
        require_member(&pulled_orbit, &point, "fine sample on pulled-back coarse orbit", &mut checks)?;
    }

    let coarse_integral = coarse.lattice.as_ref().map(|l| is_integral(&coarse.functional, l)).transpose()?;
    let fine_integral = fine.lattice.as_ref().map(|l| is_integral(&fine.functional, l)).transpose()?;
    if coarse_integral != fine_integral {
        return Err(Error::InconsistentLevels {
            check: format!(
                "integrality certificates differ: coarse {}, fine {}",
                describe_integrality(coarse_integral),
                describe_integrality(fine_integral)
            ),
        });
    }
    checks.push(Check {
        name: "integrality certificates agree".into(),
        detail: describe_integrality(coarse_integral).into(),
    });
    Ok(Verdict { checks })
}

fn describe_integrality(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "integral",
        Some(false) => "not integral",
        None => "no lattice",
    }
}

/// Reconciles `ξ₁` at level `k₁` with `ξ₂` at level `k₂ ≥ k₁`.
pub fn reconcile_tower_levels<S: Scalar>(
    tower: &QuotientTower<S>,
    (k1, xi1): (usize, &Functional<S>),
    (k2, xi2): (usize, &Functional<S>),
    seed: u64,
    samples: usize,
) -> Result<Verdict> {
    if k1 > k2 {
        return Err(Error::InconsistentLevels {
            check: format!("levels are not nested: {k1} > {k2}"),
        });
    }
    let (algebra, l1) = tower.level(k1)?;
    let (_, l2) = tower.level(k2)?;
    let coarse = LevelData {
        algebra: algebra.clone(),
        functional: xi1.clone(),
        lattice: Some(l1),
    };
    let fine = LevelData {
        algebra: algebra.clone(),
        functional: xi2.clone(),
        lattice: Some(l2),
    };
    reconcile_levels(&coarse, &fine, &Morphism::identity(algebra), seed, samples)
}

/// Reconciles per-index data on `F₁` with data on `F₂ ⊇ F₁`.
pub fn reconcile_product_levels<S: Scalar>(
    family: &ProductFamily<S>,
    (f1, eta1): (&[usize], &BTreeMap<usize, Functional<S>>),
    (f2, eta2): (&[usize], &BTreeMap<usize, Functional<S>>),
    seed: u64,
    samples: usize,
) -> Result<Verdict> {
    if let Some(&j) = f1.iter().find(|j| !f2.contains(j)) {
        return Err(Error::InconsistentLevels {
            check: format!("index {j} of the coarse support is missing from the fine support"),
        });
    }
    let coarse_level = family.product_projection(f1)?;
    let fine_level = family.product_projection(f2)?;
    let coarse = LevelData {
        algebra: coarse_level.algebra().clone(),
        functional: coarse_level.assemble_dual(eta1)?,
        lattice: None,
    };
    let fine = LevelData {
        algebra: fine_level.algebra().clone(),
        functional: fine_level.assemble_dual(eta2)?,
        lattice: None,
    };
    let bonding = fine_level.projection_onto(&coarse_level)?;
    reconcile_levels(&coarse, &fine, &bonding, seed, samples)
}

/// Where a correspondence entry lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelTag {
    Base,
    Tower(usize),
    Product(Vec<usize>),
}

impl fmt::Display for LevelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Base => write!(f, "base"),
            Self::Tower(k) => write!(f, "tower level {k}"),
            Self::Product(idx) => {
                let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
                write!(f, "product {{{}}}", idx.join(","))
            }
        }
    }
}

/// An orbit together with the induced-representation data attached to it
/// at a fixed level.
#[derive(Clone, Debug)]
pub struct CorrespondenceEntry<S> {
    pub level: LevelTag,
    pub orbit: OrbitDescriptor<S>,
    pub descriptor: InducedRepDescriptor<S>,
    /// `Some(verdict)` when the level carries a lattice.
    pub integral: Option<bool>,
}

/// Builds orbit, polarization and induced descriptor for `ℓ` at one level.
/// `flag = None` uses the canonical flag of ideals.
pub fn make_correspondence_entry<S: Scalar>(
    level: LevelTag,
    algebra: &Arc<LieAlgebra<S>>,
    ell: &Functional<S>,
    flag: Option<&Flag<S>>,
    lattice: Option<&Lattice<S>>,
) -> Result<CorrespondenceEntry<S>> {
    let orbit = match flag {
        Some(f) => OrbitDescriptor::new(algebra, ell.clone(), f.clone())?,
        None => OrbitDescriptor::with_canonical_flag(algebra, ell.clone())?,
    };
    let polarization = vergne_polarization(algebra, ell, orbit.flag())?;
    let descriptor = induce_descriptor(algebra, ell, polarization.subalgebra(), lattice)?;
    if !orbit.contains(descriptor.base())?.is_member() {
        return Err(Error::SanityFailure("base point is not on its own orbit".into()));
    }
    let integral = lattice.map(|l| orbit_integral(&orbit, l, 0, 10)).transpose()?;
    if integral == Some(false) {
        return Err(Error::SanityFailure(
            "orbit integrality disagrees with the descriptor".into(),
        ));
    }
    Ok(CorrespondenceEntry {
        level,
        orbit,
        descriptor,
        integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::vecops::unit;
    use crate::liealg::{catalog, Subspace};
    use crate::Rational;

    type Q = Rational;

    fn alg(name: &str) -> Arc<LieAlgebra<Q>> {
        Arc::new(catalog::by_name(name).unwrap())
    }

    fn fq(c: &[(i64, i64)]) -> Functional<Q> {
        Functional(c.iter().map(|&(n, d)| Q::from_frac(n, d)).collect())
    }

    fn dyadic(max: usize) -> QuotientTower<Q> {
        let r = alg("abelian1");
        let z = Lattice::new(&r, vec![unit(1, 0)]).unwrap();
        QuotientTower::new(r, LatticeRule::Geometric { base: z, ratio: 2 }, max).unwrap()
    }

    #[test]
    fn tower_levels() {
        let t = dyadic(5);
        assert_eq!(t.level(3).unwrap().1.generators(), &[vec![Q::from_int(4)]]);
        assert_eq!(t.level(1).unwrap().1.generators(), &[vec![Q::from_int(1)]]);
        assert_eq!(t.level(6).unwrap_err(), Error::LevelOutOfRange { level: 6, max: 5 });
        assert!(matches!(t.level(0), Err(Error::LevelOutOfRange { .. })));

        let h3 = alg("heisenberg3");
        let l1 = Lattice::new(&h3, vec![unit(3, 2)]).unwrap();
        let l2 = l1.scaled(&Q::from_int(2));
        let t = QuotientTower::new(h3.clone(), LatticeRule::Explicit(vec![l1.clone(), l2.clone()]), 2).unwrap();
        assert_eq!(t.level(2).unwrap().1, l2);
        // a chain that grows is rejected
        assert!(matches!(
            QuotientTower::new(h3, LatticeRule::Explicit(vec![l2, l1]), 2),
            Err(Error::InvalidLattice(_))
        ));
        let r = alg("abelian1");
        let z = Lattice::new(&r, vec![unit(1, 0)]).unwrap();
        assert!(QuotientTower::new(r, LatticeRule::Geometric { base: z, ratio: 1 }, 3).is_err());
    }

    #[test]
    fn integrality_levels() {
        let t = dyadic(5);
        assert_eq!(t.integrality_level(&fq(&[(3, 4)]), 10).unwrap(), Some(3));
        assert_eq!(t.integrality_level(&Functional::zero(1), 10).unwrap(), Some(1));
        assert_eq!(t.integrality_level(&fq(&[(1, 3)]), 20).unwrap(), None);
        for xi in [fq(&[(3, 4)]), fq(&[(1, 3)]), fq(&[(5, 16)])] {
            assert!(t.monotone_up_to(&xi, 20).unwrap());
        }
    }

    #[test]
    fn product_projection_examples() {
        let h3 = alg("heisenberg3");
        let fam = ProductFamily::repeat(h3.clone(), Some(2));
        let both = fam.product_projection(&[0, 1]).unwrap();
        let g = both.algebra();
        assert_eq!(g.dim(), 6);
        assert_eq!(g.structure_constants(0, 1), &[0, 0, 1, 0, 0, 0].map(Q::from_int));
        assert_eq!(g.structure_constants(3, 4), &[0, 0, 0, 0, 0, 1].map(Q::from_int));
        assert!(g.structure_constants(0, 4).iter().all(|c| *c == Q::from_int(0)));
        assert_eq!(fam.product_projection(&[2]).unwrap_err(), Error::BadIndex(2));

        let single = fam.product_projection(&[1]).unwrap();
        assert_eq!(single.algebra().bracket_entries(), h3.bracket_entries());

        let reals = ProductFamily::repeat(alg("abelian1"), None);
        let lvl = reals.product_projection(&[3, 0]).unwrap();
        assert_eq!(lvl.indices(), &[0, 3]);
        assert_eq!(lvl.algebra().dim(), 2);
        assert_eq!(lvl.algebra().nilpotency_class(), 1);
        assert_eq!(reals.materialized(), 2);

        let p = both.projection_onto(&single).unwrap();
        assert_eq!(p.kernel(), Subspace::span(6, &[unit(6, 0), unit(6, 1), unit(6, 2)]));
    }

    #[test]
    fn normalize_dual_examples() {
        let reals = ProductFamily::repeat(alg("abelian1"), None);
        let raw = RawDual::Entries(BTreeMap::from([(0, fq(&[(2, 1)])), (3, fq(&[(-1, 2)]))]));
        let d = reals.normalize_dual(&raw).unwrap();
        assert_eq!(d.support(), vec![0, 3]);

        let zero = RawDual::Entries(BTreeMap::from([(5, Functional::zero(1))]));
        assert_eq!(reals.normalize_dual(&zero).unwrap().support(), Vec::<usize>::new());

        let raw = RawDual::Entries(BTreeMap::from([(1, Functional::zero(1)), (2, fq(&[(5, 1)]))]));
        assert_eq!(reals.normalize_dual(&raw).unwrap().support(), vec![2]);

        let unbounded = RawDual::Rule {
            entry: Box::new(|j| Functional(vec![Q::from_int(j as i64)])),
            bound: None,
        };
        assert_eq!(reals.normalize_dual(&unbounded).unwrap_err(), Error::InfiniteSupport);
        let bounded = RawDual::Rule {
            entry: Box::new(|j| Functional(vec![Q::from_int(if j < 3 { j as i64 } else { 0 })])),
            bound: Some(10),
        };
        assert_eq!(reals.normalize_dual(&bounded).unwrap().support(), vec![1, 2]);
    }

    #[test]
    fn reconcile_product_examples() {
        let fam = ProductFamily::repeat(alg("heisenberg3"), Some(2));
        let coarse = BTreeMap::from([(0, Functional::from_ints(&[0, 0, 1]))]);
        let fine_ok = BTreeMap::from([(0, Functional::from_ints(&[0, 0, 1])), (1, Functional::zero(3))]);
        let v = reconcile_product_levels(&fam, (&[0], &coarse), (&[0, 1], &fine_ok), 0, 10).unwrap();
        assert!(!v.checks.is_empty());

        let fine_bad = BTreeMap::from([(0, Functional::from_ints(&[0, 0, 1])), (1, Functional::from_ints(&[0, 0, 1]))]);
        assert!(matches!(
            reconcile_product_levels(&fam, (&[0], &coarse), (&[0, 1], &fine_bad), 0, 10),
            Err(Error::InconsistentLevels { .. })
        ));
        assert!(reconcile_product_levels(&fam, (&[0, 1], &fine_ok), (&[0, 1], &fine_ok), 0, 5).is_ok());
        // a different point of the same orbit at the finer level still agrees
        let moved = BTreeMap::from([(0, Functional::from_ints(&[4, -3, 1]))]);
        assert!(reconcile_product_levels(&fam, (&[0], &coarse), (&[0, 1], &moved), 0, 5).is_ok());
    }

    #[test]
    fn reconcile_tower_examples() {
        let t = dyadic(4);
        let xi = fq(&[(3, 1)]);
        assert!(reconcile_tower_levels(&t, (1, &xi), (3, &xi), 0, 3).is_ok());
        assert!(matches!(
            reconcile_tower_levels(&t, (1, &xi), (3, &fq(&[(2, 1)])), 0, 3),
            Err(Error::InconsistentLevels { .. })
        ));
        let half = fq(&[(1, 2)]);
        assert!(matches!(
            reconcile_tower_levels(&t, (1, &half), (2, &half), 0, 3),
            Err(Error::InconsistentLevels { .. })
        ));
    }

    #[test]
    fn correspondence_entries() {
        let h3 = alg("heisenberg3");
        let gamma = Lattice::new(&h3, vec![unit(3, 2)]).unwrap();
        let e = make_correspondence_entry(LevelTag::Base, &h3, &Functional::from_ints(&[0, 0, 1]), None, Some(&gamma)).unwrap();
        assert_eq!(e.orbit.dimension(), 2);
        assert_eq!(
            e.descriptor.polarization().subalgebra(),
            &Subspace::span(3, &[unit(3, 1), unit(3, 2)])
        );
        assert_eq!(
            e.descriptor.character_phase(&crate::liealg::Vector::from_ints(&[0, 0, 1])).unwrap(),
            Q::from_int(1)
        );
        assert_eq!(e.integral, Some(true));

        let r = alg("abelian1");
        let z = Lattice::new(&r, vec![unit(1, 0)]).unwrap();
        let e = make_correspondence_entry(LevelTag::Tower(1), &r, &Functional::from_ints(&[5]), None, Some(&z)).unwrap();
        assert_eq!(e.orbit.dimension(), 0);
        assert_eq!(e.descriptor.polarization().subalgebra(), &Subspace::full(1));

        assert!(matches!(
            make_correspondence_entry(LevelTag::Base, &h3, &fq(&[(0, 1), (0, 1), (1, 2)]), None, Some(&gamma)),
            Err(Error::NotIntegral { .. })
        ));
    }

    #[test]
    fn dual_limit_tower_form_checks_integrality() {
        let t = dyadic(4);
        assert!(DualLimitFunctional::at_tower_level(&t, 3, fq(&[(3, 4)])).is_ok());
        assert!(matches!(
            DualLimitFunctional::at_tower_level(&t, 2, fq(&[(3, 4)])),
            Err(Error::NotIntegral { .. })
        ));
    }

    #[test]
    fn concurrent_factor_materialization() {
        let fam = Arc::new(ProductFamily::<Q>::generated(
            |j| Ok(LieAlgebra::abelian(j + 1)),
            None,
        ));
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let fam = fam.clone();
                std::thread::spawn(move || fam.factor(t % 4).unwrap().dim())
            })
            .collect();
        let dims: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 3, 4, 1, 2, 3, 4]);
        assert_eq!(fam.materialized(), 4);
    }
}

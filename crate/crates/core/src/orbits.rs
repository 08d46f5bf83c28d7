//! Coadjoint orbits: stabilizers, dimensions, membership and sampling.
//!
//! Membership is decided by triangular elimination along a flag
//! `𝔤₁ ⊂ … ⊂ 𝔤_n` with direction vectors `X₁, …, X_n`. Walking the layers
//! from the bottom, the current point `μ` already agrees with the target `η`
//! on `𝔤_{j−1}`; to fix the coordinate `η(X_j)` we flow along a direction `Y`
//! from the stabilizer of `μ|𝔤_{j−1}`, for which the coordinate moves
//! polynomially in the flow parameter. When the flag is a chain of ideals
//! that polynomial is affine and the lower coordinates do not move, so the
//! pass is complete: a coordinate no flow can reach is an orbit invariant of
//! the current stratum. For other flags the same pass is run but any blocked
//! step is reported as indeterminate.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::bch::{BchGroup, GroupElement, SymbolicGroupElement};
use crate::error::{Error, Result};
use crate::exactmath::{vecops, Assignment, Matrix, Polynomial};
use crate::liealg::{jordan_holder_flag, Flag, Functional, LieAlgebra, Subspace};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// `𝔤(ℓ) = {X : ℓ([X, Y]) = 0 for all Y}`.
pub fn stabilizer<S: Scalar>(algebra: &LieAlgebra<S>, ell: &Functional<S>) -> Result<Subspace<S>> {
    if ell.dim() != algebra.dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(relative_stabilizer(
        algebra,
        ell,
        &Subspace::full(algebra.dim()),
    ))
}

/// `{X ∈ 𝔤 : μ([X, Z]) = 0 for all Z ∈ lower}`.
pub fn relative_stabilizer<S: Scalar>(
    algebra: &LieAlgebra<S>,
    mu: &Functional<S>,
    lower: &Subspace<S>,
) -> Subspace<S> {
    let n = algebra.dim();
    let rows: Vec<Vec<S>> = lower
        .basis()
        .iter()
        .map(|z| {
            (0..n)
                .map(|i| vecops::dot(&mu.0, &algebra.bracket_coords(&vecops::unit(n, i), z)))
                .collect()
        })
        .collect();
    Subspace::span(n, &Matrix::from_rows(n, rows).nullspace())
}

/// Jump layers (0-based) of `ℓ` along `flag`: layer `j` is a jump when
/// `𝔤(ℓ) ∩ 𝔤_j = 𝔤(ℓ) ∩ 𝔤_{j−1}`. There are exactly `dim 𝔤 − dim 𝔤(ℓ)`.
pub fn jump_indices<S: Scalar>(stab: &Subspace<S>, flag: &Flag<S>) -> Vec<usize> {
    let mut previous = 0;
    let mut jumps = Vec::new();
    for (j, layer) in flag.layers().iter().enumerate() {
        let d = stab.intersection(layer).dim();
        if d == previous {
            jumps.push(j);
        }
        previous = d;
    }
    jumps
}

/// Outcome of [`OrbitDescriptor::contains`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<S> {
    /// `coadjoint_apply(witness, base) = η`, checked exactly.
    Member { witness: GroupElement<S> },
    /// The coordinate on flag layer `layer` is invariant and differs.
    NotMember { layer: usize, expected: S, found: S },
    /// Elimination could not proceed; nothing is claimed.
    Indeterminate(BlockingReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingReport {
    pub layer: usize,
    pub polynomial: String,
    pub reason: String,
}

impl<S> Membership<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, Self::Member { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Member { .. } => "yes",
            Self::NotMember { .. } => "no",
            Self::Indeterminate(_) => "indeterminate",
        }
    }
}

#[derive(Debug)]
struct WitnessCache<S> {
    entries: RwLock<HashMap<Vec<S>, GroupElement<S>>>,
}

impl<S> Default for WitnessCache<S> {
    fn default() -> Self {
        Self {
            entries: RwLock::new(HashMap::new()),
        }
    }
}

impl<S: Clone> Clone for WitnessCache<S> {
    fn clone(&self) -> Self {
        let entries = self.entries.read().expect("cache lock poisoned").clone();
        Self {
            entries: RwLock::new(entries),
        }
    }
}

/// A coadjoint orbit through a base point, with the data used to reason
/// about it.
#[derive(Clone, Debug)]
pub struct OrbitDescriptor<S> {
    group: BchGroup<S>,
    base: Functional<S>,
    stabilizer: Subspace<S>,
    flag: Flag<S>,
    jump_indices: Vec<usize>,
    cache: Option<WitnessCache<S>>,
}

impl<S: Scalar> OrbitDescriptor<S> {
    pub fn new(algebra: &Arc<LieAlgebra<S>>, base: Functional<S>, flag: Flag<S>) -> Result<Self> {
        flag.check_algebra(algebra)?;
        let stab = stabilizer(algebra, &base)?;
        let jumps = jump_indices(&stab, &flag);
        debug_assert_eq!(jumps.len(), algebra.dim() - stab.dim());
        Ok(Self {
            group: BchGroup::new(algebra.clone())?,
            base,
            stabilizer: stab,
            flag,
            jump_indices: jumps,
            cache: Some(WitnessCache::default()),
        })
    }

    /// Descriptor along the canonical flag of ideals.
    pub fn with_canonical_flag(algebra: &Arc<LieAlgebra<S>>, base: Functional<S>) -> Result<Self> {
        let flag = jordan_holder_flag(algebra);
        Self::new(algebra, base, flag)
    }

    /// Turns the witness cache off (it is on by default and safe to share).
    pub fn without_cache(mut self) -> Self {
        self.cache = None;
        self
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        self.group.algebra()
    }

    pub fn group(&self) -> &BchGroup<S> {
        &self.group
    }

    pub fn base(&self) -> &Functional<S> {
        &self.base
    }

    pub fn stabilizer(&self) -> &Subspace<S> {
        &self.stabilizer
    }

    pub fn dimension(&self) -> usize {
        self.algebra().dim() - self.stabilizer.dim()
    }

    pub fn flag(&self) -> &Flag<S> {
        &self.flag
    }

    pub fn jump_indices(&self) -> &[usize] {
        &self.jump_indices
    }

    /// Decides whether `eta` lies on the orbit (see the module docs).
    pub fn contains(&self, eta: &Functional<S>) -> Result<Membership<S>> {
        let n = self.algebra().dim();
        if eta.dim() != n {
            return Err(Error::AlgebraMismatch);
        }
        if let Some(cache) = &self.cache {
            if let Some(w) = cache.entries.read().expect("cache lock poisoned").get(&eta.0) {
                return Ok(Membership::Member { witness: w.clone() });
            }
        }
        let outcome = self.eliminate(eta)?;
        if let (Some(cache), Membership::Member { witness }) = (&self.cache, &outcome) {
            cache
                .entries
                .write()
                .expect("cache lock poisoned")
                .insert(eta.0.clone(), witness.clone());
        }
        Ok(outcome)
    }

    fn eliminate(&self, eta: &Functional<S>) -> Result<Membership<S>> {
        let algebra = self.algebra();
        let ideal_flag = self.flag.is_ideal_chain();
        let mut mu = self.base.clone();
        let mut witness = self.group.identity();

        for j in 0..self.flag.len() {
            let x_j = self.flag.direction(j);
            let target = vecops::dot(&eta.0, x_j);
            let lower = self.flag.below(j);
            let candidates = relative_stabilizer(algebra, &mu, &lower);
            let param = format!("t{j}");
            let symbolic_mu: Vec<Polynomial<S>> =
                mu.0.iter().cloned().map(Polynomial::constant).collect();

            // first candidate direction that actually moves the coordinate
            let mut moving = None;
            for y in candidates.basis() {
                let flowed = self.group.coadjoint_symbolic(
                    &SymbolicGroupElement {
                        direction: y.clone(),
                        parameter: param.clone(),
                    },
                    &symbolic_mu,
                )?;
                let coordinate = flowed
                    .iter()
                    .zip(x_j)
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Polynomial::zero(), |acc, (p, c)| &acc + &p.scale(c));
                if coordinate.degree_in(&param) > 0 {
                    moving = Some((y, coordinate));
                    break;
                }
            }

            let Some((y, coordinate)) = moving else {
                let current = vecops::dot(&mu.0, x_j);
                if current == target {
                    continue;
                }
                if ideal_flag {
                    return Ok(Membership::NotMember {
                        layer: j,
                        expected: target,
                        found: current,
                    });
                }
                return Ok(Membership::Indeterminate(BlockingReport {
                    layer: j,
                    polynomial: current.to_string(),
                    reason: "coordinate is fixed by every admissible flow, but the flag is not a chain of ideals".into(),
                }));
            };

            let equation = &coordinate - &Polynomial::constant(target);
            let t = match equation.solve_affine(&param, &Assignment::new()) {
                Ok(t) => t,
                Err(e @ (Error::NotAffine { .. } | Error::DegenerateCoefficient { .. })) => {
                    return Ok(Membership::Indeterminate(BlockingReport {
                        layer: j,
                        polynomial: equation.to_string(),
                        reason: e.to_string(),
                    }));
                }
                Err(e) => return Err(e),
            };
            let step = GroupElement(vecops::scale(&t, &y));
            mu = self.group.coadjoint_apply(&step, &mu)?;
            witness = self.group.multiply(&step, &witness)?;

            if !ideal_flag {
                let lower_ok = (0..=j).all(|i| {
                    let d = self.flag.direction(i);
                    vecops::dot(&mu.0, d) == vecops::dot(&eta.0, d)
                });
                if !lower_ok {
                    return Ok(Membership::Indeterminate(BlockingReport {
                        layer: j,
                        polynomial: equation.to_string(),
                        reason: "flow disturbed lower layers".into(),
                    }));
                }
            }
        }

        if self.group.coadjoint_apply(&witness, &self.base)? == *eta {
            Ok(Membership::Member { witness })
        } else if ideal_flag {
            Err(Error::SanityFailure(
                "elimination witness does not reproduce the target".into(),
            ))
        } else {
            Ok(Membership::Indeterminate(BlockingReport {
                layer: self.flag.len().saturating_sub(1),
                polynomial: String::new(),
                reason: "witness failed final verification".into(),
            }))
        }
    }

    /// `count` orbit points `Ad*(g)ℓ` for seeded small-height `g`; the first
    /// element is always `g = identity`, so the base point is included.
    pub fn sample(&self, seed: u64, count: usize) -> Result<Vec<Functional<S>>> {
        Ok(self
            .sample_with_elements(seed, count)?
            .into_iter()
            .map(|(_, f)| f)
            .collect())
    }

    pub fn sample_with_elements(
        &self,
        seed: u64,
        count: usize,
    ) -> Result<Vec<(GroupElement<S>, Functional<S>)>> {
        let n = self.algebra().dim();
        let mut sampler = Sampler::new(seed);
        (0..count)
            .map(|i| {
                let g = if i == 0 {
                    self.group.identity()
                } else {
                    GroupElement(sampler.vector(n))
                };
                let point = self.group.coadjoint_apply(&g, &self.base)?;
                Ok((g, point))
            })
            .collect()
    }
}

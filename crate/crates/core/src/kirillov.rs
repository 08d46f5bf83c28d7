//! Polarizations, induced-representation descriptors, pullbacks along
//! surjections and integrality with respect to central lattices.

use std::sync::Arc;

use crate::bch::{BchGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exactmath::{vecops, zspan, Matrix};
use crate::liealg::{Flag, Functional, Lattice, LieAlgebra, Morphism, Subspace, Vector};
use crate::orbits::{stabilizer, Membership, OrbitDescriptor};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// Result of checking the three polarization conditions independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationReport {
    pub subalgebra: bool,
    pub subordinate: bool,
    pub maximal_dimension: bool,
    pub dim: usize,
    /// `½(dim 𝔤 + dim 𝔤(ℓ))`
    pub expected_dim: usize,
    pub stabilizer_dim: usize,
}

impl PolarizationReport {
    pub fn passes(&self) -> bool {
        self.subalgebra && self.subordinate && self.maximal_dimension
    }

    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.subalgebra {
            out.push("subalgebra");
        }
        if !self.subordinate {
            out.push("subordinate");
        }
        if !self.maximal_dimension {
            out.push("maximal isotropic dimension");
        }
        out
    }
}

/// A subalgebra `𝔥` with `ℓ([𝔥,𝔥]) = 0` of dimension `½(dim 𝔤 + dim 𝔤(ℓ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization<S> {
    base: Functional<S>,
    subalgebra: Subspace<S>,
    certificate: PolarizationReport,
}

impl<S: Scalar> Polarization<S> {
    /// Accepts any subspace that passes [`verify_polarization`].
    pub fn from_subspace(
        algebra: &LieAlgebra<S>,
        base: Functional<S>,
        subalgebra: Subspace<S>,
    ) -> Result<Self> {
        let certificate = verify_polarization(algebra, &base, &subalgebra)?;
        if !certificate.passes() {
            return Err(Error::PolarizationInvalid(certificate.violations().join(", ")));
        }
        Ok(Self {
            base,
            subalgebra,
            certificate,
        })
    }

    pub fn base(&self) -> &Functional<S> {
        &self.base
    }

    pub fn subalgebra(&self) -> &Subspace<S> {
        &self.subalgebra
    }

    pub fn certificate(&self) -> &PolarizationReport {
        &self.certificate
    }
}

pub fn verify_polarization<S: Scalar>(
    algebra: &LieAlgebra<S>,
    ell: &Functional<S>,
    h: &Subspace<S>,
) -> Result<PolarizationReport> {
    if h.ambient_dim() != algebra.dim() || ell.dim() != algebra.dim() {
        return Err(Error::AlgebraMismatch);
    }
    let basis = h.basis();
    let mut subordinate = true;
    'outer: for (a, x) in basis.iter().enumerate() {
        for y in &basis[a + 1..] {
            if !vecops::dot(&ell.0, &algebra.bracket_coords(x, y)).is_zero() {
                subordinate = false;
                break 'outer;
            }
        }
    }
    let stabilizer_dim = stabilizer(algebra, ell)?.dim();
    let expected_dim = (algebra.dim() + stabilizer_dim) / 2;
    Ok(PolarizationReport {
        subalgebra: h.is_subalgebra(algebra)?,
        subordinate,
        maximal_dimension: h.dim() == expected_dim,
        dim: h.dim(),
        expected_dim,
        stabilizer_dim,
    })
}

/// Stabilizer of `ℓ|_layer` inside `layer`.
fn layer_stabilizer<S: Scalar>(algebra: &LieAlgebra<S>, ell: &Functional<S>, layer: &Subspace<S>) -> Subspace<S> {
    let basis = layer.basis();
    let k = basis.len();
    let form = Matrix::from_fn(k, k, |s, r| {
        vecops::dot(&ell.0, &algebra.bracket_coords(&basis[r], &basis[s]))
    });
    let vectors: Vec<Vec<S>> = form.nullspace().iter().map(|c| layer.combine(c)).collect();
    Subspace::span(algebra.dim(), &vectors)
}

/// `𝔥 = Σ_j 𝔤_j(ℓ|𝔤_j)` along a flag of ideals, certified before returning.
pub fn vergne_polarization<S: Scalar>(
    algebra: &LieAlgebra<S>,
    ell: &Functional<S>,
    flag: &Flag<S>,
) -> Result<Polarization<S>> {
    flag.check_algebra(algebra)?;
    if ell.dim() != algebra.dim() {
        return Err(Error::AlgebraMismatch);
    }
    let h = flag
        .layers()
        .iter()
        .fold(Subspace::zero(algebra.dim()), |acc, layer| {
            acc.sum(&layer_stabilizer(algebra, ell, layer))
        });
    let certificate = verify_polarization(algebra, ell, &h)?;
    if !certificate.passes() {
        return Err(Error::CertificateFailure(certificate.violations().join(", ")));
    }
    Ok(Polarization {
        base: ell.clone(),
        subalgebra: h,
        certificate,
    })
}

/// `ξ(γ) ∈ ℤ` for every lattice generator.
pub fn is_integral<S: Scalar>(xi: &Functional<S>, lattice: &Lattice<S>) -> Result<bool> {
    Ok(first_non_integral(xi, lattice)?.is_none())
}

fn first_non_integral<S: Scalar>(xi: &Functional<S>, lattice: &Lattice<S>) -> Result<Option<(usize, S)>> {
    if xi.dim() != lattice.ambient_dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(lattice
        .generators()
        .iter()
        .map(|g| vecops::dot(&xi.0, g))
        .enumerate()
        .find(|(_, v)| !v.is_integer()))
}

/// Integrality of a whole orbit. The base point decides it (the lattice is
/// central, so `ξ(γ)` is constant on the orbit); `samples` orbit points are
/// checked as well.
pub fn orbit_integral<S: Scalar>(
    desc: &OrbitDescriptor<S>,
    lattice: &Lattice<S>,
    seed: u64,
    samples: usize,
) -> Result<bool> {
    let verdict = is_integral(desc.base(), lattice)?;
    for point in desc.sample(seed, samples)? {
        if is_integral(&point, lattice)? != verdict {
            return Err(Error::SanityFailure(format!(
                "orbit point {point} disagrees with the base point on integrality"
            )));
        }
    }
    Ok(verdict)
}

/// The data `(ℓ, 𝔥, χ_ℓ)` standing for `Ind_H^G χ_ℓ`, with
/// `χ_ℓ(exp X) = e^{iℓ(X)}` stored through its exact phase `ℓ(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedRepDescriptor<S> {
    algebra: Arc<LieAlgebra<S>>,
    lattice: Option<Lattice<S>>,
    polarization: Polarization<S>,
}

impl<S: Scalar> InducedRepDescriptor<S> {
    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        &self.algebra
    }

    pub fn lattice(&self) -> Option<&Lattice<S>> {
        self.lattice.as_ref()
    }

    pub fn base(&self) -> &Functional<S> {
        self.polarization.base()
    }

    pub fn polarization(&self) -> &Polarization<S> {
        &self.polarization
    }

    /// Phase `ℓ(X)` of `χ_ℓ(exp X)` for `X ∈ 𝔥`.
    pub fn character_phase(&self, x: &Vector<S>) -> Result<S> {
        if x.dim() != self.algebra.dim() {
            return Err(Error::AlgebraMismatch);
        }
        if !self.polarization.subalgebra().contains(&x.0) {
            return Err(Error::NotInPolarization);
        }
        self.base().pair(&x.0)
    }

    /// Phases on the echelon basis of `𝔥`.
    pub fn basis_phases(&self) -> Vec<S> {
        self.polarization
            .subalgebra()
            .basis()
            .iter()
            .map(|b| vecops::dot(&self.base().0, b))
            .collect()
    }
}

pub fn induce_descriptor<S: Scalar>(
    algebra: &Arc<LieAlgebra<S>>,
    ell: &Functional<S>,
    h: &Subspace<S>,
    lattice: Option<&Lattice<S>>,
) -> Result<InducedRepDescriptor<S>> {
    let polarization = Polarization::from_subspace(algebra, ell.clone(), h.clone())?;
    if let Some(lattice) = lattice {
        if let Some((generator, value)) = first_non_integral(ell, lattice)? {
            return Err(Error::NotIntegral {
                generator,
                value: value.to_string(),
            });
        }
    }
    Ok(InducedRepDescriptor {
        algebra: algebra.clone(),
        lattice: lattice.cloned(),
        polarization,
    })
}

/// `ξ ∘ L(p)`.
pub fn pullback_functional<S: Scalar>(p: &Morphism<S>, xi: &Functional<S>) -> Result<Functional<S>> {
    p.dual_apply(xi)
}

/// Checks `Ad_{G₂}(p(g)) ∘ L(p) = L(p) ∘ Ad_{G₁}(g)` for one group element.
pub fn functoriality_holds<S: Scalar>(
    p: &Morphism<S>,
    source_group: &BchGroup<S>,
    target_group: &BchGroup<S>,
    g: &GroupElement<S>,
) -> Result<bool> {
    let image = GroupElement(p.matrix().mul_vec(&g.0));
    let lhs = target_group.adjoint_matrix(&image)?.mul(p.matrix());
    let rhs = p.matrix().mul(&source_group.adjoint_matrix(g)?);
    Ok(lhs == rhs)
}

/// A pulled-back orbit with the sanity checks that were run on it.
#[derive(Clone, Debug)]
pub struct PulledBackOrbit<S> {
    pub descriptor: OrbitDescriptor<S>,
    pub functoriality_checks: usize,
    pub membership_checks: usize,
}

/// `L(p)*(𝒪₂)` as an orbit of the source.
///
/// Runs `samples` functoriality checks on seeded group elements and checks
/// that `samples` pulled-back orbit points of `desc₂` lie on the result.
pub fn pullback_orbit<S: Scalar>(
    p: &Morphism<S>,
    desc2: &OrbitDescriptor<S>,
    seed: u64,
    samples: usize,
) -> Result<PulledBackOrbit<S>> {
    p.require_surjective()?;
    if desc2.algebra().as_ref() != p.target().as_ref() {
        return Err(Error::AlgebraMismatch);
    }
    let base = pullback_functional(p, desc2.base())?;
    let descriptor = OrbitDescriptor::with_canonical_flag(p.source(), base)?;
    let source_group = descriptor.group();

    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let g = GroupElement(sampler.vector(p.source().dim()));
        if !functoriality_holds(p, source_group, desc2.group(), &g)? {
            return Err(Error::SanityFailure(format!(
                "functoriality fails at g = {:?}",
                vecops_strings(&g.0)
            )));
        }
    }
    if descriptor.dimension() != desc2.dimension() {
        return Err(Error::SanityFailure(format!(
            "pulled-back orbit has dimension {}, expected {}",
            descriptor.dimension(),
            desc2.dimension()
        )));
    }
    for point in desc2.sample(seed.wrapping_add(1), samples)? {
        let lifted = pullback_functional(p, &point)?;
        match descriptor.contains(&lifted)? {
            Membership::Member { .. } => {}
            other => {
                return Err(Error::SanityFailure(format!(
                    "pulled-back sample {lifted} is not on the orbit ({})",
                    other.label()
                )))
            }
        }
    }
    Ok(PulledBackOrbit {
        descriptor,
        functoriality_checks: samples,
        membership_checks: samples,
    })
}

fn vecops_strings<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Dimension bookkeeping recorded by [`pullback_polarization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackBookkeeping {
    pub kernel_dim: usize,
    pub source_polarization_dim: usize,
    pub target_polarization_dim: usize,
    pub source_stabilizer_dim: usize,
    pub target_stabilizer_dim: usize,
}

/// `𝔥₁ = L(p)⁻¹(𝔥₂)`, re-certified for `ℓ₁ = ℓ₂ ∘ L(p)`.
pub fn pullback_polarization<S: Scalar>(
    p: &Morphism<S>,
    pol2: &Polarization<S>,
) -> Result<(Polarization<S>, PullbackBookkeeping)> {
    p.require_surjective()?;
    let target = p.target();
    let recheck = verify_polarization(target, pol2.base(), pol2.subalgebra())?;
    if !recheck.passes() {
        return Err(Error::PolarizationInvalid(recheck.violations().join(", ")));
    }
    let ell1 = pullback_functional(p, pol2.base())?;
    let h1 = p.preimage(pol2.subalgebra())?;
    let certificate = verify_polarization(p.source(), &ell1, &h1)?;
    if !certificate.passes() {
        return Err(Error::CertificateFailure(certificate.violations().join(", ")));
    }
    let kernel = p.kernel();
    let stab1 = stabilizer(p.source(), &ell1)?;
    let book = PullbackBookkeeping {
        kernel_dim: kernel.dim(),
        source_polarization_dim: h1.dim(),
        target_polarization_dim: pol2.subalgebra().dim(),
        source_stabilizer_dim: stab1.dim(),
        target_stabilizer_dim: recheck.stabilizer_dim,
    };
    if book.source_polarization_dim != book.target_polarization_dim + book.kernel_dim {
        return Err(Error::CertificateFailure("dim 𝔥₁ ≠ dim 𝔥₂ + dim Ker L(p)".into()));
    }
    if book.source_stabilizer_dim != book.target_stabilizer_dim + book.kernel_dim {
        return Err(Error::CertificateFailure(
            "dim 𝔤₁(ℓ₁) ≠ dim 𝔤₂(ℓ₂) + dim Ker L(p)".into(),
        ));
    }
    if !h1.contains_subspace(&kernel) || !stab1.contains_subspace(&kernel) {
        return Err(Error::CertificateFailure(
            "Ker L(p) is not contained in 𝔥₁ and 𝔤₁(ℓ₁)".into(),
        ));
    }
    Ok((
        Polarization {
            base: ell1,
            subalgebra: h1,
            certificate,
        },
        book,
    ))
}

/// Outcome of [`transport_through_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverTransport {
    pub image_generators: Vec<Vec<String>>,
    pub probes_checked: usize,
}

/// Checks `p̃(Γ₁) = Γ₂` as lattices and that every integral probe on `Γ₂`
/// pulls back to a functional integral on `Γ₁`.
pub fn transport_through_cover<S: Scalar>(
    p: &Morphism<S>,
    source_lattice: &Lattice<S>,
    target_lattice: &Lattice<S>,
    probes: &[Functional<S>],
) -> Result<CoverTransport> {
    p.require_surjective()?;
    if source_lattice.ambient_dim() != p.source().dim()
        || target_lattice.ambient_dim() != p.target().dim()
    {
        return Err(Error::AlgebraMismatch);
    }
    let images: Vec<Vec<S>> = source_lattice
        .generators()
        .iter()
        .map(|g| p.matrix().mul_vec(g))
        .collect();
    for (i, image) in images.iter().enumerate() {
        if !target_lattice.contains(image) {
            return Err(Error::LatticeImageMismatch(format!(
                "image of generator {i} is not in the target lattice"
            )));
        }
    }
    for (i, g) in target_lattice.generators().iter().enumerate() {
        if !zspan::in_integer_span(&images, g) {
            return Err(Error::LatticeImageMismatch(format!(
                "target generator {i} is not an integer combination of the images"
            )));
        }
    }
    let mut probes_checked = 0;
    for probe in probes {
        if !is_integral(probe, target_lattice)? {
            continue;
        }
        let lifted = pullback_functional(p, probe)?;
        if !is_integral(&lifted, source_lattice)? {
            return Err(Error::SanityFailure(format!(
                "integral functional {probe} pulls back to non-integral {lifted}"
            )));
        }
        probes_checked += 1;
    }
    Ok(CoverTransport {
        image_generators: images.iter().map(|v| vecops_strings(v)).collect(),
        probes_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{catalog, jordan_holder_flag, quotient_by_ideal};
    use crate::Rational;

    type Q = Rational;

    fn alg(name: &str) -> Arc<LieAlgebra<Q>> {
        Arc::new(catalog::by_name(name).unwrap())
    }

    fn span(n: usize, idx: &[usize]) -> Subspace<Q> {
        Subspace::span(n, &idx.iter().map(|&i| vecops::unit(n, i)).collect::<Vec<_>>())
    }

    fn fq(c: &[(i64, i64)]) -> Functional<Q> {
        Functional(c.iter().map(|&(n, d)| Q::from_frac(n, d)).collect())
    }

    #[test]
    fn vergne_examples() {
        let h3 = alg("heisenberg3");
        let pol = vergne_polarization(&h3, &Functional::from_ints(&[0, 0, 1]), &jordan_holder_flag(&h3)).unwrap();
        assert_eq!(pol.subalgebra(), &span(3, &[1, 2]));
        assert_eq!(pol.certificate().expected_dim, 2);

        let ab = alg("abelian4");
        let pol = vergne_polarization(&ab, &Functional::from_ints(&[1, 2, 3, 4]), &jordan_holder_flag(&ab)).unwrap();
        assert_eq!(pol.subalgebra(), &Subspace::full(4));

        let f4 = alg("filiform4");
        let pol = vergne_polarization(&f4, &Functional::from_ints(&[0, 0, 0, 1]), &jordan_holder_flag(&f4)).unwrap();
        assert_eq!(pol.subalgebra(), &span(4, &[1, 2, 3]));
        assert_eq!(pol.certificate().expected_dim, 3);
    }

    #[test]
    fn verify_reports_each_condition() {
        let h3 = alg("heisenberg3");
        let ell = Functional::from_ints(&[0, 0, 1]);
        assert!(verify_polarization(&h3, &ell, &span(3, &[1, 2])).unwrap().passes());
        let r = verify_polarization(&h3, &ell, &span(3, &[0, 1])).unwrap();
        assert!(!r.subordinate);
        assert!(!r.subalgebra);
        let r = verify_polarization(&h3, &ell, &span(3, &[2])).unwrap();
        assert!(r.subalgebra && r.subordinate && !r.maximal_dimension);
        assert_eq!((r.dim, r.expected_dim), (1, 2));
    }

    #[test]
    fn induced_descriptor_phases() {
        let h3 = alg("heisenberg3");
        let ell = Functional::from_ints(&[0, 0, 1]);
        let d = induce_descriptor(&h3, &ell, &span(3, &[1, 2]), None).unwrap();
        assert_eq!(d.character_phase(&Vector::from_ints(&[0, 0, 1])).unwrap(), Q::from_int(1));
        assert_eq!(d.character_phase(&Vector::zero(3)).unwrap(), Q::from_int(0));
        assert_eq!(
            d.character_phase(&Vector::from_ints(&[1, 0, 0])),
            Err(Error::NotInPolarization)
        );
        let gamma = Lattice::new(&h3, vec![vecops::unit(3, 2)]).unwrap();
        let half = fq(&[(0, 1), (0, 1), (3, 2)]);
        assert!(matches!(
            induce_descriptor(&h3, &half, &span(3, &[1, 2]), Some(&gamma)),
            Err(Error::NotIntegral { .. })
        ));
        assert!(matches!(
            induce_descriptor(&h3, &ell, &span(3, &[2]), None),
            Err(Error::PolarizationInvalid(_))
        ));
    }

    #[test]
    fn pullback_functional_examples() {
        let f4 = alg("filiform4");
        let (_, p) = quotient_by_ideal(&f4, &f4.center()).unwrap();
        assert_eq!(
            pullback_functional(&p, &Functional::from_ints(&[0, 0, 1])).unwrap(),
            Functional::from_ints(&[0, 0, 1, 0])
        );
        assert_eq!(pullback_functional(&p, &Functional::zero(3)).unwrap(), Functional::zero(4));
        let id = Morphism::identity(f4.clone());
        let xi = Functional::from_ints(&[1, 2, 3, 4]);
        assert_eq!(pullback_functional(&id, &xi).unwrap(), xi);
    }

    #[test]
    fn pullback_orbit_filiform_to_heisenberg() {
        let f4 = alg("filiform4");
        let (h3, p) = quotient_by_ideal(&f4, &f4.center()).unwrap();
        let desc2 = OrbitDescriptor::with_canonical_flag(&h3, Functional::from_ints(&[0, 0, 1])).unwrap();
        let out = pullback_orbit(&p, &desc2, 0, 20).unwrap();
        assert_eq!(out.descriptor.base(), &Functional::from_ints(&[0, 0, 1, 0]));
        assert_eq!(out.descriptor.dimension(), 2);
        assert_eq!(out.descriptor.stabilizer(), &span(4, &[2, 3]));
        assert!(out
            .descriptor
            .contains(&Functional::from_ints(&[3, -2, 1, 0]))
            .unwrap()
            .is_member());
    }

    #[test]
    fn pullback_orbit_abelianization() {
        let h3 = alg("heisenberg3");
        let (r2, p) = quotient_by_ideal(&h3, &h3.center()).unwrap();
        let desc2 = OrbitDescriptor::with_canonical_flag(&r2, Functional::from_ints(&[2, 5])).unwrap();
        let out = pullback_orbit(&p, &desc2, 1, 10).unwrap();
        assert_eq!(out.descriptor.dimension(), 0);
        assert_eq!(out.descriptor.stabilizer(), &Subspace::full(3));
        assert_eq!(out.descriptor.base(), &Functional::from_ints(&[2, 5, 0]));
    }

    #[test]
    fn pullback_requires_surjection() {
        let h3 = alg("heisenberg3");
        let ab = alg("abelian1");
        // inclusion of the center ℝ → h3 is a homomorphism but not onto
        let inc = Morphism::new(ab.clone(), h3.clone(), Matrix::from_rows(1, vec![vec![Q::from_int(0)], vec![Q::from_int(0)], vec![Q::from_int(1)]])).unwrap();
        let desc = OrbitDescriptor::with_canonical_flag(&h3, Functional::from_ints(&[0, 0, 1])).unwrap();
        assert!(matches!(pullback_orbit(&inc, &desc, 0, 1), Err(Error::NotSurjective { .. })));
    }

    #[test]
    fn pullback_polarization_examples() {
        let f4 = alg("filiform4");
        let (h3, p) = quotient_by_ideal(&f4, &f4.center()).unwrap();
        let pol2 = Polarization::from_subspace(&h3, Functional::from_ints(&[0, 0, 1]), span(3, &[1, 2])).unwrap();
        let (pol1, book) = pullback_polarization(&p, &pol2).unwrap();
        assert_eq!(pol1.subalgebra(), &span(4, &[1, 2, 3]));
        assert_eq!(book.source_polarization_dim, book.target_polarization_dim + book.kernel_dim);

        let (r2, ab) = quotient_by_ideal(&h3, &h3.center()).unwrap();
        let pol2 = Polarization::from_subspace(&r2, Functional::from_ints(&[4, -1]), Subspace::full(2)).unwrap();
        let (pol1, book) = pullback_polarization(&ab, &pol2).unwrap();
        assert_eq!(pol1.subalgebra(), &Subspace::full(3));
        assert_eq!((book.source_polarization_dim, book.kernel_dim), (3, 1));

        let id = Morphism::identity(h3.clone());
        let pol = vergne_polarization(&h3, &Functional::from_ints(&[0, 0, 1]), &jordan_holder_flag(&h3)).unwrap();
        assert_eq!(pullback_polarization(&id, &pol).unwrap().0, pol);
    }

    #[test]
    fn integrality_examples() {
        let h3 = alg("heisenberg3");
        let gamma = Lattice::new(&h3, vec![vecops::unit(3, 2)]).unwrap();
        assert!(is_integral(&fq(&[(1, 2), (7, 1), (3, 1)]), &gamma).unwrap());
        assert!(is_integral(&Functional::zero(3), &gamma).unwrap());
        assert!(!is_integral(&fq(&[(0, 1), (0, 1), (1, 2)]), &gamma).unwrap());

        let d = OrbitDescriptor::with_canonical_flag(&h3, Functional::from_ints(&[0, 0, 1])).unwrap();
        assert!(orbit_integral(&d, &gamma, 0, 100).unwrap());
        let d = OrbitDescriptor::with_canonical_flag(&h3, fq(&[(0, 1), (0, 1), (2, 3)])).unwrap();
        assert!(!orbit_integral(&d, &gamma, 0, 100).unwrap());
    }

    #[test]
    fn cover_transport_examples() {
        let f4 = alg("filiform4");
        let (h3, p) = quotient_by_ideal(&f4, &f4.center()).unwrap();
        let g1 = Lattice::new(&f4, vec![vecops::unit(4, 3)]).unwrap();
        assert!(transport_through_cover(&p, &g1, &Lattice::trivial(3), &[]).is_ok());

        let id = Morphism::identity(h3.clone());
        let g = Lattice::new(&h3, vec![vecops::unit(3, 2)]).unwrap();
        let out = transport_through_cover(&id, &g, &g, &[Functional::from_ints(&[0, 0, 2])]).unwrap();
        assert_eq!(out.probes_checked, 1);

        let r = alg("abelian1");
        let z = Lattice::new(&r, vec![vecops::unit(1, 0)]).unwrap();
        let two_z = z.scaled(&Q::from_int(2));
        let id = Morphism::identity(r.clone());
        assert!(matches!(
            transport_through_cover(&id, &two_z, &z, &[]),
            Err(Error::LatticeImageMismatch(_))
        ));
    }
}

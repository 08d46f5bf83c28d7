//! One function per subcommand; each fills a [`Report`].

use std::path::Path;
use std::sync::Arc;

use nilorbit::io::{self, AlgebraFile, FlagFile, LatticeFile, LevelsFile, ProductLevelFile, TowerLevelFile};
use nilorbit::kirillov::{
    induce_descriptor, is_integral, orbit_integral, pullback_polarization, pullback_orbit,
    transport_through_cover, vergne_polarization, PolarizationReport,
};
use nilorbit::liealg::{catalog, jordan_holder_flag, Functional, Subspace};
use nilorbit::orbits::{stabilizer, Membership, OrbitDescriptor};
use nilorbit::prolie::{
    reconcile_product_levels, reconcile_tower_levels, DualLimitFunctional, RawDual, Verdict as LevelVerdict,
};
use nilorbit::scalar::parse_csv;
use nilorbit::{Error, QFlag, QFunctional, QLattice, QLieAlgebra, Rational};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::report::{q, qs, qss, Report, Verdict};
use crate::Command;

pub enum Outcome {
    Done,
    /// A membership question could not be decided.
    Indeterminate,
}

pub enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Library(e)
    }
}

type Run = Result<Outcome, Failure>;

pub fn run(command: &Command, report: &mut Report) -> Run {
    match command {
        Command::Validate { algebra } => validate(report, &algebra.algebra),
        Command::Info { algebra } => info(report, &algebra.algebra),
        Command::Orbit {
            algebra,
            functional,
            flag,
            target,
            seed,
            samples,
        } => orbit(
            report,
            &algebra.algebra,
            &functional.functional,
            &flag.flag,
            target.as_deref(),
            seed.seed,
            *samples,
        ),
        Command::Stabilizer { algebra, functional } => {
            stabilizer_cmd(report, &algebra.algebra, &functional.functional)
        }
        Command::Polarize {
            algebra,
            functional,
            flag,
        } => polarize(report, &algebra.algebra, &functional.functional, &flag.flag),
        Command::Induce {
            algebra,
            functional,
            flag,
            lattice,
            subalgebra,
        } => induce(
            report,
            &algebra.algebra,
            &functional.functional,
            &flag.flag,
            lattice.as_deref(),
            subalgebra.as_deref(),
        ),
        Command::Pullback {
            morphism,
            functional,
            lattice,
            target_lattice,
            seed,
            samples,
        } => pullback(
            report,
            morphism,
            &functional.functional,
            lattice.as_deref().zip(target_lattice.as_deref()),
            seed.seed,
            *samples,
        ),
        Command::Integrality {
            algebra,
            lattice,
            tower,
            functional,
            max_level,
            seed,
            samples,
        } => match (tower, algebra, lattice) {
            (Some(tower), _, _) => integrality_tower(report, tower, &functional.functional, *max_level),
            (None, Some(algebra), Some(lattice)) => {
                integrality_lattice(report, algebra, lattice, &functional.functional, seed.seed, *samples)
            }
            _ => Err(Failure::Usage(
                "integrality needs either --tower or both --algebra and --lattice".into(),
            )),
        },
        Command::Tower { tower, max_level } => tower_cmd(report, tower, *max_level),
        Command::Product {
            product,
            indices,
            dual,
        } => product_cmd(report, product, indices, dual.as_deref()),
        Command::Reconcile {
            tower,
            product,
            levels,
            seed,
            samples,
        } => match (tower, product) {
            (Some(t), None) => reconcile_tower(report, t, levels, seed.seed, *samples),
            (None, Some(p)) => reconcile_product(report, p, levels, seed.seed, *samples),
            _ => Err(Failure::Usage("reconcile needs exactly one of --tower or --product".into())),
        },
        Command::Catalog { name } => catalog_cmd(report, name.as_deref()),
    }
}

// ---- input loading -------------------------------------------------------

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        input: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn json_file<T: DeserializeOwned>(report: &mut Report, label: &str, path: &Path) -> Result<T, Error> {
    let text = read_text(path)?;
    report.inputs.file(label, &path.display().to_string(), &text);
    io::from_json(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn load_algebra(report: &mut Report, reference: &str) -> Result<Arc<QLieAlgebra>, Error> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        report.inputs.value("algebra", reference);
        return Ok(Arc::new(catalog::by_name(name)?));
    }
    let file: AlgebraFile = json_file(report, "algebra", Path::new(reference))?;
    Ok(Arc::new(file.to_algebra()?))
}

fn parse_functional(report: &mut Report, label: &str, csv: &str, dim: usize) -> Result<QFunctional, Error> {
    report.inputs.value(label, csv);
    let coords: Vec<Rational> = parse_csv(csv)?;
    if coords.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: coords.len(),
        });
    }
    Ok(Functional(coords))
}

fn load_flag(report: &mut Report, spec: &str, algebra: &QLieAlgebra) -> Result<QFlag, Error> {
    if spec == "auto" {
        return Ok(jordan_holder_flag(algebra));
    }
    json_file::<FlagFile>(report, "flag", Path::new(spec))?.to_flag(algebra)
}

fn load_lattice(report: &mut Report, label: &str, path: &Path, algebra: &QLieAlgebra) -> Result<QLattice, Error> {
    json_file::<LatticeFile>(report, label, path)?.to_lattice(algebra)
}

// ---- rendering helpers ---------------------------------------------------

fn algebra_json(algebra: &QLieAlgebra) -> Value {
    json!({
        "name": algebra.name(),
        "dim": algebra.dim(),
        "basis": algebra.basis_names(),
        "nilpotency_class": algebra.nilpotency_class(),
    })
}

fn subspace_json(s: &Subspace<Rational>) -> Value {
    json!({"dim": s.dim(), "basis": qss(&s.basis())})
}

fn flag_json(flag: &QFlag) -> Value {
    json!({"directions": qss(flag.directions()), "ideal_chain": flag.is_ideal_chain()})
}

fn certificate_json(c: &PolarizationReport) -> Value {
    json!({
        "subalgebra": c.subalgebra,
        "subordinate": c.subordinate,
        "maximal_dimension": c.maximal_dimension,
        "dim": c.dim,
        "expected_dim": c.expected_dim,
        "stabilizer_dim": c.stabilizer_dim,
    })
}

fn certificate_verdicts(report: &mut Report, c: &PolarizationReport) {
    report.verdict(Verdict::new("subalgebra", c.subalgebra));
    report.verdict(Verdict::new("subordinate", c.subordinate));
    report.verdict(
        Verdict::new("maximal isotropic dimension", c.maximal_dimension)
            .with_detail(format!("{} of {}", c.dim, c.expected_dim)),
    );
}

fn level_verdicts(report: &mut Report, verdict: &LevelVerdict) {
    // Collapse repeated per-sample checks into one line with a count.
    let mut counts: Vec<(String, usize)> = Vec::new();
    for check in &verdict.checks {
        match counts.iter_mut().find(|(name, _)| *name == check.name) {
            Some((_, n)) => *n += 1,
            None => counts.push((check.name.clone(), 1)),
        }
    }
    for (name, n) in counts {
        report.verdict(Verdict::new(name, true).with_detail(format!("{n} checked")));
    }
}

// ---- subcommands ---------------------------------------------------------

fn validate(report: &mut Report, reference: &str) -> Run {
    let algebra = load_algebra(report, reference)?;
    report.set("algebra", algebra_json(&algebra));
    report.verdict(Verdict::new("jacobi identity", true));
    report.verdict(Verdict::new("nilpotent", true));
    if let Some(class) = reference.strip_prefix("catalog:").and_then(catalog::documented_class) {
        report.verdict(
            Verdict::new("documented class", class == algebra.nilpotency_class())
                .with_detail(format!("expected {class}")),
        );
    }
    Ok(Outcome::Done)
}

fn info(report: &mut Report, reference: &str) -> Run {
    let algebra = load_algebra(report, reference)?;
    report.set("algebra", algebra_json(&algebra));
    let brackets: Vec<Value> = algebra
        .bracket_entries()
        .iter()
        .map(|e| {
            let coeffs: Map<String, Value> = e.coeffs.iter().map(|(k, c)| (k.to_string(), q(c))).collect();
            json!({"i": e.i, "j": e.j, "coeffs": coeffs})
        })
        .collect();
    report.set("brackets", Value::Array(brackets));
    let series: Vec<usize> = algebra.lower_central_series().iter().map(Subspace::dim).collect();
    report.set("lower_central_series_dims", json!(series));
    report.set("center", subspace_json(&algebra.center()));
    report.set("canonical_flag", flag_json(&jordan_holder_flag(&algebra)));
    Ok(Outcome::Done)
}

fn membership_json(desc: &OrbitDescriptor<Rational>, eta: &QFunctional, m: &Membership<Rational>) -> Result<Value, Error> {
    Ok(match m {
        Membership::Member { witness } => {
            let verified = desc.group().coadjoint_apply(witness, desc.base())? == *eta;
            json!({"result": m.label(), "witness": qs(witness.coords()), "verified": verified})
        }
        Membership::NotMember { layer, expected, found } => json!({
            "result": m.label(),
            "layer": layer,
            "expected": q(expected),
            "found": q(found),
        }),
        Membership::Indeterminate(block) => json!({
            "result": m.label(),
            "layer": block.layer,
            "polynomial": block.polynomial,
            "reason": block.reason,
        }),
    })
}

fn orbit(
    report: &mut Report,
    reference: &str,
    functional: &str,
    flag: &str,
    target: Option<&str>,
    seed: u64,
    samples: usize,
) -> Run {
    let algebra = load_algebra(report, reference)?;
    let ell = parse_functional(report, "functional", functional, algebra.dim())?;
    let flag = load_flag(report, flag, &algebra)?;
    report.seed = Some(seed);
    let desc = OrbitDescriptor::new(&algebra, ell.clone(), flag)?;
    report.set("algebra", algebra_json(&algebra));
    report.set("base", qs(ell.coords()));
    report.set("dimension", json!(desc.dimension()));
    report.set("stabilizer", subspace_json(desc.stabilizer()));
    report.set("jump_indices", json!(desc.jump_indices()));
    report.set("flag", flag_json(desc.flag()));
    if samples > 0 {
        let points: Vec<Vec<Rational>> = desc.sample(seed, samples)?.into_iter().map(|f| f.0).collect();
        report.set("samples", qss(&points));
    }
    let mut outcome = Outcome::Done;
    if let Some(target) = target {
        let eta = parse_functional(report, "target", target, algebra.dim())?;
        let m = desc.contains(&eta)?;
        report.set("target", qs(eta.coords()));
        report.set("membership", membership_json(&desc, &eta, &m)?);
        if let Membership::Member { .. } = m {
            report.verdict(Verdict::new("witness verified", true));
        }
        if let Membership::Indeterminate(_) = m {
            outcome = Outcome::Indeterminate;
        }
    }
    Ok(outcome)
}

fn stabilizer_cmd(report: &mut Report, reference: &str, functional: &str) -> Run {
    let algebra = load_algebra(report, reference)?;
    let ell = parse_functional(report, "functional", functional, algebra.dim())?;
    let stab = stabilizer(&algebra, &ell)?;
    report.set("base", qs(ell.coords()));
    report.set("stabilizer", subspace_json(&stab));
    report.set("orbit_dimension", json!(algebra.dim() - stab.dim()));
    Ok(Outcome::Done)
}

fn polarize(report: &mut Report, reference: &str, functional: &str, flag: &str) -> Run {
    let algebra = load_algebra(report, reference)?;
    let ell = parse_functional(report, "functional", functional, algebra.dim())?;
    let flag = load_flag(report, flag, &algebra)?;
    let pol = vergne_polarization(&algebra, &ell, &flag)?;
    report.set("base", qs(ell.coords()));
    report.set("polarization", subspace_json(pol.subalgebra()));
    report.set("certificate", certificate_json(pol.certificate()));
    certificate_verdicts(report, pol.certificate());
    Ok(Outcome::Done)
}

fn induce(
    report: &mut Report,
    reference: &str,
    functional: &str,
    flag: &str,
    lattice: Option<&Path>,
    subalgebra: Option<&Path>,
) -> Run {
    let algebra = load_algebra(report, reference)?;
    let ell = parse_functional(report, "functional", functional, algebra.dim())?;
    let h = match subalgebra {
        Some(path) => {
            let file: FlagFile = json_file(report, "subalgebra", path)?;
            let vectors = file
                .vectors
                .iter()
                .map(|v| io::parse_coords_dim(v, algebra.dim()))
                .collect::<Result<Vec<_>, _>>()?;
            Subspace::span(algebra.dim(), &vectors)
        }
        None => {
            let flag = load_flag(report, flag, &algebra)?;
            vergne_polarization(&algebra, &ell, &flag)?.subalgebra().clone()
        }
    };
    let lattice = lattice
        .map(|p| load_lattice(report, "lattice", p, &algebra))
        .transpose()?;
    let desc = induce_descriptor(&algebra, &ell, &h, lattice.as_ref())?;
    report.set("base", qs(ell.coords()));
    report.set("polarization", subspace_json(desc.polarization().subalgebra()));
    report.set("character_phases", qs(&desc.basis_phases()));
    report.set("certificate", certificate_json(desc.polarization().certificate()));
    if let Some(l) = &lattice {
        report.set("lattice", qss(l.generators()));
        report.verdict(Verdict::new("integral on lattice", true));
    }
    certificate_verdicts(report, desc.polarization().certificate());
    Ok(Outcome::Done)
}

fn pullback(
    report: &mut Report,
    morphism: &Path,
    functional: &str,
    lattices: Option<(&Path, &Path)>,
    seed: u64,
    samples: usize,
) -> Run {
    let file: io::MorphismFile = json_file(report, "morphism", morphism)?;
    let p = file.to_morphism::<Rational>(&io::base_dir(morphism))?;
    let target = p.target().clone();
    let ell2 = parse_functional(report, "functional", functional, target.dim())?;
    report.seed = Some(seed);

    let desc2 = OrbitDescriptor::with_canonical_flag(&target, ell2.clone())?;
    let pulled = pullback_orbit(&p, &desc2, seed, samples)?;
    let pol2 = vergne_polarization(&target, &ell2, &jordan_holder_flag(&target))?;
    let (pol1, book) = pullback_polarization(&p, &pol2)?;

    report.set("source", algebra_json(p.source()));
    report.set("target", algebra_json(&target));
    report.set("kernel", subspace_json(&p.kernel()));
    report.set("target_functional", qs(ell2.coords()));
    report.set("pulled_back_functional", qs(pulled.descriptor.base().coords()));
    report.set(
        "orbit_dimensions",
        json!({"source": pulled.descriptor.dimension(), "target": desc2.dimension()}),
    );
    report.set("source_stabilizer", subspace_json(pulled.descriptor.stabilizer()));
    report.set("target_polarization", subspace_json(pol2.subalgebra()));
    report.set("source_polarization", subspace_json(pol1.subalgebra()));
    report.set(
        "bookkeeping",
        json!({
            "kernel_dim": book.kernel_dim,
            "source_polarization_dim": book.source_polarization_dim,
            "target_polarization_dim": book.target_polarization_dim,
            "source_stabilizer_dim": book.source_stabilizer_dim,
            "target_stabilizer_dim": book.target_stabilizer_dim,
        }),
    );
    report.verdict(
        Verdict::new("functoriality of Ad", true).with_detail(format!("{} group elements", pulled.functoriality_checks)),
    );
    report.verdict(
        Verdict::new("pulled-back samples on orbit", true).with_detail(format!("{} samples", pulled.membership_checks)),
    );
    report.verdict(Verdict::new("polarization dimension adds kernel", true));
    report.verdict(Verdict::new("kernel inside stabilizer and polarization", true));

    if let Some((source_path, target_path)) = lattices {
        let l1 = load_lattice(report, "lattice", source_path, p.source())?;
        let l2 = load_lattice(report, "target_lattice", target_path, &target)?;
        let transport = transport_through_cover(&p, &l1, &l2, std::slice::from_ref(&ell2))?;
        report.set("lattice_images", json!(transport.image_generators));
        report.verdict(Verdict::new("lattice image matches", true));
        report.verdict(
            Verdict::new("integral probes pull back integral", true)
                .with_detail(format!("{} probes", transport.probes_checked)),
        );
    }
    Ok(Outcome::Done)
}

fn integrality_tower(report: &mut Report, path: &Path, functional: &str, max_level: Option<usize>) -> Run {
    let file: io::TowerFile = json_file(report, "tower", path)?;
    let tower = file.to_tower::<Rational>(&io::base_dir(path))?;
    let xi = parse_functional(report, "functional", functional, tower.algebra().dim())?;
    let max_k = max_level.unwrap_or(tower.max_level());
    let level = tower.integrality_level(&xi, max_k)?;
    let monotone = tower.monotone_up_to(&xi, max_k)?;
    report.set("functional", qs(xi.coords()));
    report.set("max_level", json!(max_k));
    report.set("level", json!(level));
    report.verdict(Verdict::new("monotone in the level", monotone));
    Ok(Outcome::Done)
}

fn integrality_lattice(
    report: &mut Report,
    reference: &str,
    lattice: &Path,
    functional: &str,
    seed: u64,
    samples: usize,
) -> Run {
    let algebra = load_algebra(report, reference)?;
    let xi = parse_functional(report, "functional", functional, algebra.dim())?;
    let lattice = load_lattice(report, "lattice", lattice, &algebra)?;
    report.seed = Some(seed);
    let integral = is_integral(&xi, &lattice)?;
    let desc = OrbitDescriptor::with_canonical_flag(&algebra, xi.clone())?;
    let orbit = orbit_integral(&desc, &lattice, seed, samples)?;
    report.set("functional", qs(xi.coords()));
    report.set("lattice", qss(lattice.generators()));
    report.set("integral", json!(integral));
    report.verdict(
        Verdict::new("integrality constant on orbit", orbit == integral).with_detail(format!("{samples} samples")),
    );
    Ok(Outcome::Done)
}

fn tower_cmd(report: &mut Report, path: &Path, max_level: Option<usize>) -> Run {
    let file: io::TowerFile = json_file(report, "tower", path)?;
    let tower = file.to_tower::<Rational>(&io::base_dir(path))?;
    let top = max_level.unwrap_or(tower.max_level());
    let levels = (1..=top)
        .map(|k| {
            let (_, l) = tower.level(k)?;
            Ok(json!({"level": k, "generators": qss(l.generators())}))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    report.set("algebra", algebra_json(tower.algebra()));
    report.set("max_level", json!(tower.max_level()));
    report.set("levels", Value::Array(levels));
    report.verdict(Verdict::new("chain is decreasing", true));
    Ok(Outcome::Done)
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: "expected a non-negative integer index".into(),
            })
        })
        .collect()
}

fn product_cmd(report: &mut Report, path: &Path, indices: &str, dual: Option<&Path>) -> Run {
    let file: io::ProductFile = json_file(report, "product", path)?;
    let family = file.to_family::<Rational>(&io::base_dir(path))?;
    report.inputs.value("indices", indices);
    let level = family.product_projection(&parse_indices(indices)?)?;
    report.set("family_size", json!(family.len()));
    report.set("indices", json!(level.indices()));
    report.set("offsets", json!(level.offsets()));
    report.set("algebra", algebra_json(level.algebra()));
    if let Some(dual) = dual {
        let file: io::DualFile = json_file(report, "dual", dual)?;
        let entries = io::parse_entries(&family, &file.entries)?;
        let normalized = family.normalize_dual(&RawDual::Entries(entries))?;
        let DualLimitFunctional::Product { support } = &normalized else {
            unreachable!("product families normalize to the product form");
        };
        let blocks: Map<String, Value> = support.iter().map(|(j, eta)| (j.to_string(), qs(eta.coords()))).collect();
        report.set("dual", json!({"support": normalized.support(), "entries": blocks}));
        let again = family.normalize_dual(&RawDual::Entries(support.clone()))?;
        report.verdict(Verdict::new("normalization idempotent", again == normalized));
    }
    Ok(Outcome::Done)
}

fn reconcile_tower(report: &mut Report, path: &Path, levels: &Path, seed: u64, samples: usize) -> Run {
    let file: io::TowerFile = json_file(report, "tower", path)?;
    let tower = file.to_tower::<Rational>(&io::base_dir(path))?;
    let spec: LevelsFile<TowerLevelFile> = json_file(report, "levels", levels)?;
    let dim = tower.algebra().dim();
    let xi1 = Functional(io::parse_coords_dim(&spec.coarse.coords, dim)?);
    let xi2 = Functional(io::parse_coords_dim(&spec.fine.coords, dim)?);
    report.seed = Some(seed);
    let verdict = reconcile_tower_levels(
        &tower,
        (spec.coarse.level, &xi1),
        (spec.fine.level, &xi2),
        seed,
        samples,
    )?;
    report.set("coarse", json!({"level": spec.coarse.level, "functional": qs(xi1.coords())}));
    report.set("fine", json!({"level": spec.fine.level, "functional": qs(xi2.coords())}));
    report.set("consistent", json!(true));
    level_verdicts(report, &verdict);
    Ok(Outcome::Done)
}

fn reconcile_product(report: &mut Report, path: &Path, levels: &Path, seed: u64, samples: usize) -> Run {
    let file: io::ProductFile = json_file(report, "product", path)?;
    let family = file.to_family::<Rational>(&io::base_dir(path))?;
    let spec: LevelsFile<ProductLevelFile> = json_file(report, "levels", levels)?;
    let eta1 = io::parse_entries(&family, &spec.coarse.entries)?;
    let eta2 = io::parse_entries(&family, &spec.fine.entries)?;
    report.seed = Some(seed);
    let verdict = reconcile_product_levels(
        &family,
        (&spec.coarse.indices, &eta1),
        (&spec.fine.indices, &eta2),
        seed,
        samples,
    )?;
    report.set("coarse_indices", json!(spec.coarse.indices));
    report.set("fine_indices", json!(spec.fine.indices));
    report.set("consistent", json!(true));
    level_verdicts(report, &verdict);
    Ok(Outcome::Done)
}

fn catalog_cmd(report: &mut Report, name: Option<&str>) -> Run {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => catalog::STANDARD.to_vec(),
    };
    let mut entries = Vec::new();
    for n in names {
        let algebra: QLieAlgebra = catalog::by_name(n)?;
        let documented = catalog::documented_class(n);
        report.verdict(Verdict::new(
            format!("{n} validates with documented class"),
            documented == Some(algebra.nilpotency_class()),
        ));
        entries.push(json!({
            "name": n,
            "dim": algebra.dim(),
            "nilpotency_class": algebra.nilpotency_class(),
            "documented_class": documented,
        }));
    }
    report.set("entries", Value::Array(entries));
    Ok(Outcome::Done)
}

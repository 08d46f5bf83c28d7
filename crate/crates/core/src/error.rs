use thiserror::Error;

/// Every failure surfaced by the library.
///
/// Vectors inside variants are pre-rendered as `"p/q"` strings so the error
/// type does not depend on the scalar type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("bracket entry ({i},{j}) is invalid: {reason}")]
    BadBracket { i: usize, j: usize, reason: String },

    #[error("Jacobi identity fails for basis triple ({i},{j},{k}); defect {defect:?}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        defect: Vec<String>,
    },

    #[error("algebra is not nilpotent: lower central series stabilizes at a {} dimensional subspace", stable_basis.len())]
    NotNilpotent { stable_basis: Vec<Vec<String>> },

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("linear map does not preserve the bracket on basis pair ({i},{j})")]
    NotAHomomorphism { i: usize, j: usize },

    #[error("morphism is not surjective (rank {rank}, target dimension {target_dim})")]
    NotSurjective { rank: usize, target_dim: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("variable {0:?} has no value")]
    MissingVariable(String),

    #[error("polynomial has degree {degree} in {var:?}; expected at most 1")]
    NotAffine { var: String, degree: u32 },

    #[error("coefficient of {var:?} vanishes")]
    DegenerateCoefficient { var: String },

    #[error("variables {0:?} remain unbound")]
    UnresolvedVariables(Vec<String>),

    #[error("nilpotency class {class} exceeds the supported BCH degree {bound}")]
    ClassTooHigh { class: usize, bound: usize },

    #[error("flag does not belong to this algebra: {0}")]
    FlagMismatch(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("polarization certificate failed: {0}")]
    CertificateFailure(String),

    #[error("not a polarization: {0}")]
    PolarizationInvalid(String),

    #[error("functional is not integral on the lattice (generator {generator} pairs to {value})")]
    NotIntegral { generator: usize, value: String },

    #[error("vector does not lie in the polarizing subalgebra")]
    NotInPolarization,

    #[error("sanity check failed: {0}")]
    SanityFailure(String),

    #[error("lattice image mismatch: {0}")]
    LatticeImageMismatch(String),

    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("index {0} is not part of the family")]
    BadIndex(usize),

    #[error("dual element has no finite support bound")]
    InfiniteSupport,

    #[error("levels are inconsistent: {check}")]
    InconsistentLevels { check: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Stable variant name, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Parse { .. } => "Parse",
            Self::DimensionMismatch { .. } => "DimensionMismatch",
            Self::AlgebraMismatch { .. } => "AlgebraMismatch",
            Self::BadBracket { .. } => "BadBracket",
            Self::JacobiViolation { .. } => "JacobiViolation",
            Self::NotNilpotent { .. } => "NotNilpotent",
            Self::NotAnIdeal { .. } => "NotAnIdeal",
            Self::NotAHomomorphism { .. } => "NotAHomomorphism",
            Self::NotSurjective { .. } => "NotSurjective",
            Self::InvalidLattice { .. } => "InvalidLattice",
            Self::MissingVariable { .. } => "MissingVariable",
            Self::NotAffine { .. } => "NotAffine",
            Self::DegenerateCoefficient { .. } => "DegenerateCoefficient",
            Self::UnresolvedVariables { .. } => "UnresolvedVariables",
            Self::ClassTooHigh { .. } => "ClassTooHigh",
            Self::FlagMismatch { .. } => "FlagMismatch",
            Self::InvalidFlag { .. } => "InvalidFlag",
            Self::CertificateFailure { .. } => "CertificateFailure",
            Self::PolarizationInvalid { .. } => "PolarizationInvalid",
            Self::NotIntegral { .. } => "NotIntegral",
            Self::NotInPolarization { .. } => "NotInPolarization",
            Self::SanityFailure { .. } => "SanityFailure",
            Self::LatticeImageMismatch { .. } => "LatticeImageMismatch",
            Self::LevelOutOfRange { .. } => "LevelOutOfRange",
            Self::BadIndex { .. } => "BadIndex",
            Self::InfiniteSupport { .. } => "InfiniteSupport",
            Self::InconsistentLevels { .. } => "InconsistentLevels",
            Self::UnknownCatalog { .. } => "UnknownCatalog",
            Self::Schema { .. } => "Schema",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

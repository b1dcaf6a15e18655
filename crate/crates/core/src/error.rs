use thiserror::Error;

use crate::linalg::Ring;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown ring tag `{0}`")]
    UnknownRing(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: Ring },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("d_{lower} ∘ d_{upper} is not zero")]
    NotAComplex { lower: usize, upper: usize },
    #[error("{which}: square-zero condition fails at degrees {lower}, {upper}")]
    NotABinaryComplex {
        which: &'static str,
        lower: usize,
        upper: usize,
    },
    #[error("chain map does not commute with the differentials in degree {0}")]
    NotAChainMap(usize),
    #[error("degree {degree} outside the support [0, {top}]")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("level bound {bound} is smaller than the top degree {top}")]
    BoundTooSmall { bound: usize, top: usize },
    #[error("simplicial identity `{identity}` fails at level {level}")]
    SimplicialIdentity { identity: String, level: usize },
    #[error("support bound violated: normalized level {level} has rank {rank}, expected 0")]
    SupportBound { level: usize, rank: usize },
    #[error("inclusion {0} is not an admissible monomorphism")]
    InadmissibleMono(String),
    #[error("vector is not in the span of the given basis")]
    NotInSpan,
    #[error("polynomial is not symmetric (fails under x{0} <-> x{1})")]
    NotSymmetric(usize, usize),
    #[error("coordinates known up to λ^{available}, but λ^{needed} is required")]
    InsufficientCoordinates { needed: usize, available: usize },
    #[error("complex is not acyclic (H_{0} ≠ 0)")]
    NotAcyclic(usize),
    #[error("binary complex is not biacyclic")]
    NotBiacyclic,
    #[error("operation requires a field, got {0}")]
    RequiresField(Ring),
    #[error("graded pieces of the two differentials disagree: {0}")]
    GradingMismatch(String),
    #[error("characters do not determine K₀ over {ring} for a group of order {order}")]
    ModularCase { ring: Ring, order: usize },
    #[error("representations live over different groups or rings")]
    GroupMismatch,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("not a representation: {0}")]
    NotAHomomorphism(String),
    #[error("malformed functor word: {0}")]
    MalformedWord(String),
    #[error("infeasible size: {0}")]
    InfeasibleSize(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library.
///
/// Point labels in error payloads are 0-based points; loop elements are
/// reported as loop elements (0 is the identity) and are named as such.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {0} is not admissible (must be 1 or 3 mod 6)")]
    NotAdmissible(usize),
    #[error("pair {{{0}, {1}}} is not covered by any triple")]
    PairMissing(usize, usize),
    #[error("pair {{{0}, {1}}} is covered by more than one triple")]
    PairDuplicated(usize, usize),
    #[error("bad triple {0:?}: {1}")]
    BadTriple([usize; 3], &'static str),
    #[error("wrong number of triples: expected {expected}, found {found}")]
    TripleCount { expected: usize, found: usize },
    #[error("table is not a Steiner loop: {0}")]
    NotTotallySymmetric(String),
    #[error("element set is not a subloop")]
    NotASubloop,
    #[error("point set is not a subsystem")]
    NotASubsystem,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("element {0} lies inside the normal subloop")]
    ElementInsideN(usize),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("order {0} is too small (need at least 7)")]
    OrderTooSmall(usize),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("block ({0}, {1}) is not a Latin square")]
    NotLatin(usize, usize),
    #[error("identity block is not the multiplication table of the subloop")]
    BadIdentityBlock,
    #[error("block ({0}, {1}) is not the transpose of block ({1}, {0})")]
    TransposeViolation(usize, usize),
    #[error("diagonal of block ({0}, {0}) is not constantly the identity")]
    DiagonalViolation(usize),
    #[error("total symmetry fails for blocks ({0}, {1})")]
    TotalSymmetryViolation(usize, usize),
    #[error("operator cannot be completed: derived block ({0}, {1}) is not Latin")]
    Incompletable(usize, usize),
    #[error("invalid operator: {0}")]
    InvalidOperator(Box<Error>),
    #[error("bad section: {0}")]
    BadSection(String),
    #[error("square is not symmetric")]
    NotSymmetric,
    #[error("square diagonal is not constantly the identity")]
    BadDiagonal,
    #[error("unknown fixture key `{0}`")]
    UnknownKey(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

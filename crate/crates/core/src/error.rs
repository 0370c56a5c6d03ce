use thiserror::Error;

/// Every failure the library can report.
///
/// [`Error::kind`] gives a stable machine-readable tag that the CLI puts in
/// its `{"error": {"kind": ..}}` payloads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("genus mismatch: graph has genus {actual}, expected {expected}")]
    GenusMismatch { expected: u32, actual: u32 },
    #[error("bad leg labels: {0}")]
    BadLegLabels(String),
    #[error("vertex genus must be a nonnegative integer, got {0}")]
    NegativeGenus(i64),
    #[error("vertex index {index} out of range for {vertices} vertices")]
    VertexOutOfRange { index: usize, vertices: usize },
    #[error("graph mixes genus-labeled and unlabeled vertices")]
    MixedGenusLabels,
    #[error("operation requires a genus-labeled graph")]
    NotGenusLabeled,
    #[error("operation requires a genus-free graph")]
    NotGenusFree,
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(usize),
    #[error("invalid enumeration budget: {0}")]
    InvalidBudget(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unstable pair (g, n) = ({g}, {n}): need 2g - 2 + n > 0")]
    UnstablePair { g: u32, n: usize },
    #[error("forgetting a marking would leave the unstable pair (g, n) = ({g}, {n})")]
    UnstableTarget { g: u32, n: usize },
    #[error("graph contains a cycle made only of unstable vertices")]
    CyclicAllUnstable,
    #[error("marking {marking} is not present (n = {n})")]
    MarkingNotPresent { marking: usize, n: usize },
    #[error("graph is not stable")]
    NotStable,
    #[error("decorated inputs are not supported by this operation")]
    DecoratedInputUnsupported,
    #[error("leg weights sum to {sum}, which is not {expected} mod {modulus}")]
    InconsistentLegSum { sum: i64, expected: i64, modulus: u64 },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("coefficient polynomial failed validation at sample moduli {0:?}")]
    PolynomialityCheckFailed(Vec<u64>),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Disconnected => "Disconnected",
            Error::Empty => "Empty",
            Error::GenusMismatch { .. } => "GenusMismatch",
            Error::BadLegLabels(_) => "BadLegLabels",
            Error::NegativeGenus(_) => "NegativeGenus",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::MixedGenusLabels => "MixedGenusLabels",
            Error::NotGenusLabeled => "NotGenusLabeled",
            Error::NotGenusFree => "NotGenusFree",
            Error::EdgeNotInGraph(_) => "EdgeNotInGraph",
            Error::InvalidBudget(_) => "InvalidBudget",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::UnstablePair { .. } => "UnstablePair",
            Error::UnstableTarget { .. } => "UnstableTarget",
            Error::CyclicAllUnstable => "CyclicAllUnstable",
            Error::MarkingNotPresent { .. } => "MarkingNotPresent",
            Error::NotStable => "NotStable",
            Error::DecoratedInputUnsupported => "DecoratedInputUnsupported",
            Error::InconsistentLegSum { .. } => "InconsistentLegSum",
            Error::InconsistentInput(_) => "InconsistentInput",
            Error::PolynomialityCheckFailed(_) => "PolynomialityCheckFailed",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

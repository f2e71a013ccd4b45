use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("item {item} out of range for {n} item types")]
    ItemOutOfRange { item: usize, n: usize },

    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("{n} item types exceeds the supported maximum of {max}")]
    TooManyItems { n: usize, max: usize },

    #[error("{what}: expected length {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("operation requires the complete graph K_n")]
    NotComplete,

    #[error("{what} = {value} exceeds enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("linear-only price has nonzero entry on edge coordinate {0}")]
    NonLinearPrice(usize),

    #[error("coordinate {coord} has value {value}, expected 0 or {r}")]
    NotScaledBinary { coord: usize, value: i64, r: i64 },

    #[error("edge coordinate {coord} is set but an endpoint is not")]
    DanglingEdge { coord: usize },

    #[error("component containing item {item} is not a clique")]
    NotClique { item: usize },

    #[error("bundle entry {value} at item {item} exceeds m = {m}")]
    EntryExceedsM { item: usize, value: i64, m: usize },

    #[error("negative coordinate {coord}")]
    NegativeCoordinate { coord: usize },

    #[error("face {face}: {reason}")]
    InvalidFace { face: usize, reason: &'static str },

    #[error("target {target} violates the balance condition")]
    Balance { target: usize },

    #[error("target multiplicities sum to {got}, expected {expected}")]
    MultiplicitySum { expected: usize, got: usize },

    #[error("valuations do not cover item {item}")]
    NotCovering { item: usize },

    #[error("agent {agent} does not bid on a clique")]
    NotCliqueSupport { agent: usize },

    #[error("point is incompatible with the covering at edge {0}-{1}")]
    Incompatible(usize, usize),

    #[error("the cliques of the point cannot be matched to agents whose supports contain them")]
    NoSupportAssignment,

    #[error("supply mismatch: projection of the allocation differs from the supply")]
    SupplyMismatch,

    #[error("supply must lie in {{0, r}}^n for a single r")]
    SupplyNotUniform,

    #[error("no decomposable point projects to the supply")]
    NoCandidatePoint,

    #[error("at least one finite weight is required")]
    NoFiniteWeight,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown corpus instance `{0}`")]
    UnknownCorpus(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

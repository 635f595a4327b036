use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid modulus {0}: must be a prime in [2^31, 2^63)")]
    InvalidPrime(u64),
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("field has {actual} elements, at least {required} required")]
    FieldTooSmall { required: u128, actual: u64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("pivot block is singular")]
    SingularPivotBlock,
    #[error("matrix is not skew-symmetric with zero diagonal at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("input of size {size} exceeds the enumeration limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label sets do not match: {0}")]
    LabelMismatch(String),
    #[error("sets must be disjoint, both contain `{0}`")]
    OverlappingSets(String),

    #[error("representation has no feasible set")]
    EmptyDeltaMatroid,
    #[error("minor is empty: {0}")]
    InfeasibleMinor(String),
    #[error("matrix has rank {rank}, expected full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("the {0} slice of the projection is empty")]
    EmptySlice(&'static str),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("input matrix is singular")]
    SingularInput,
    #[error("marked entry ({0}, {1}) is not inside a single component")]
    BadComponent(usize, usize),
    #[error("target set is not feasible in the delta-sum")]
    InfeasibleTarget,
    #[error("randomized construction failed after {attempts} attempts; retry with another seed")]
    RandomizationFailure { attempts: usize },
    #[error("no solution found (randomized, one-sided)")]
    NotFound,
    #[error("no common feasible set found (randomized)")]
    NoCommonSet,

    #[error("family mixes cardinalities {0} and {1}")]
    MixedCardinality(usize, usize),
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
}

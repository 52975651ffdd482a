use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the supported size {limit}")]
    FieldTooLarge { order: u64, limit: u64 },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("basis must have {expected} GF(q)-independent elements")]
    BadBasis { expected: usize },
    #[error("element code {code} out of range for a field of order {order}")]
    ElementOutOfRange { code: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("enumeration of {needed} items exceeds the guard {guard}")]
    GuardExceeded { needed: u128, guard: u128 },

    // ambient space
    #[error("block ({rows},{cols}) violates 1 <= n <= m")]
    BadBlock { rows: usize, cols: usize },
    #[error("profile is not canonical (sorted by non-increasing rows, then columns)")]
    NonCanonicalProfile,
    #[error("profile must have non-increasing row counts")]
    UnsortedProfile,
    #[error("distance {d} outside 1..={max}")]
    DistanceOutOfRange { d: usize, max: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shape mismatch between matrix tuples or profiles")]
    ShapeMismatch,
    #[error("partition part {part} exceeds the extension degree {m}")]
    BadPartition { part: usize, m: usize },

    // codes
    #[error("codes are defined over different fields")]
    FieldMismatch,
    #[error("basis elements are linearly dependent")]
    DependentBasis,
    #[error("generator matrix does not have full row rank")]
    RankDeficient,
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("code of dimension {dim} exceeds the Singleton bound {bound}")]
    SingletonViolated { dim: usize, bound: usize },

    // base MSRD generators
    #[error("no valid beta: {0}")]
    NoValidBeta(String),
    #[error("invalid beta: {0}")]
    InvalidBeta(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),

    // combiners
    #[error("stacking requires square blocks")]
    NonSquareBlocks,
    #[error("concatenated profile must have non-increasing row counts")]
    GlueOrder,

    // extenders
    #[error("{0} is not MSRD")]
    NotMsrd(String),
    #[error("q must be even")]
    QMustBeEven,
    #[error("m must be odd")]
    MOddRequired,
    #[error("distance condition fails: d - t = {lhs} < {rhs}")]
    DistanceCondition { lhs: i64, rhs: usize },
    #[error("extension tuples are dependent or meet the base code")]
    ExtensionTuplesDependent,
    #[error("ext group {group} needs {total} coordinates but only m = {m} are available")]
    GroupTooLarge { group: usize, total: usize, m: usize },
    #[error("breakpoints must be strictly increasing, start above 0 and end at the ext block count")]
    BadBreakpoints,
    #[error("subspace for ext block {block} has dimension {got}, expected {expected}")]
    SubspaceDimension { block: usize, expected: usize, got: usize },
    #[error("subspaces of ext group {group} do not form a direct sum")]
    NotDirectSum { group: usize },
    #[error("lattice member {subset:?} has distance {found:?}, expected {expected}")]
    LatticeBroken {
        subset: Vec<usize>,
        expected: usize,
        found: Option<usize>,
    },
    #[error("one-weight criterion needs dimension {expected}, code has {got}")]
    OneWeightInapplicable { expected: usize, got: usize },
    #[error("last {t} columns are not an information set")]
    SingularTail { t: usize },
    #[error("necessary condition violated: pieces cover {cells} cells but t*m = {limit}")]
    NecessaryCondition { cells: usize, limit: usize },
    #[error("partition piece {piece} is empty or out of range")]
    BadPiece { piece: usize },
    #[error("partition pieces {a} and {b} overlap")]
    OverlappingPieces { a: usize, b: usize },

    // file format
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cayley table is empty")]
    EmptyTable,
    #[error("Cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("Cayley table entry {value} at ({row}, {col}) is outside 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("Cayley table is not a Latin square: {axis} {index} repeats an element")]
    NotLatinSquare { axis: &'static str, index: usize },
    #[error("Cayley table has no two-sided identity element")]
    NoIdentity,
    #[error("identity element is at index {identity}, expected 0")]
    NoIdentityAtZero { identity: usize },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("generator {generator} is not a permutation of 0..{degree}")]
    NotAPermutation { generator: usize, degree: usize },
    #[error("group order exceeds the configured limit of {limit}")]
    OrderLimitExceeded { limit: usize },
    #[error("bad parameter for {family}: {reason}")]
    BadParameter { family: String, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element index {index} is outside a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group {0} is abelian")]
    AbelianGroup(String),
    #[error("group {0} does not have prime-power order")]
    NotPGroup(String),
    #[error("group {0} is not an AC-group")]
    NotACGroup(String),
    #[error("group {0} is not solvable")]
    NotSolvable(String),
    #[error("solvable AC-group {0} matched none of the types H1-H5")]
    Unclassifiable(String),
    #[error("normal subgroup of order {kernel_order} satisfies the kernel condition but no complement was found")]
    KernelFoundNoComplement { kernel_order: usize },
    #[error("graph has {size} vertices, above the limit of {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("isomorphism certificate rejected: {0}")]
    InvalidIso(String),
    #[error("unknown group address {0:?}")]
    UnknownGroup(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: u128, bound: u128 },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("division by zero")]
    DivisionByZero,
    #[error("Galois parameter {t} is not coprime to conductor {m}")]
    InvalidGaloisParameter { t: i64, m: u32 },
    #[error("value is not an algebraic integer")]
    NotAnAlgebraicInteger,
    #[error("conductor {value} does not divide reduction conductor {modulus}")]
    ConductorMismatch { value: u32, modulus: u32 },
    #[error("central character value is not integral: corrupted table")]
    IntegralityFailure,
    #[error("invalid character table: {0}")]
    InvalidTable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("no member of the block has the normal subgroup in its kernel")]
    NoDominatedBlock,
    #[error("defect group is not cyclic")]
    NotCyclicDefect,
    #[error("defect group is central")]
    CentralDefect,
    #[error("defect group is trivial")]
    TrivialDefect,
    #[error("|Irr(B)| = {found} but e + (|D|-1)/e = {expected}")]
    InconsistentCount { found: usize, expected: usize },
    #[error("Brauer graph is not a tree: {0}")]
    NotATree(String),
    #[error("Brauer tree not determined: {0} candidate trees remain")]
    AmbiguousBrauerTree(usize),
    #[error("derived Brauer character has non-positive degree")]
    NegativeDegree,
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("no block of the normalizer induces the block")]
    CorrespondentNotFound,
    #[error("permutation does not normalize the group")]
    NotAnAutomorphism,
    #[error("{a} is not coprime to {p}")]
    NotCoprime { a: i64, p: u64 },
    #[error("unsupported series configuration: {0}")]
    UnsupportedSeries(String),
    #[error("realization mismatch: {0}")]
    RealizationMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::NotASubgroup => "NotASubgroup",
            Error::NotAMember => "NotAMember",
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidGaloisParameter { .. } => "InvalidGaloisParameter",
            Error::NotAnAlgebraicInteger => "NotAnAlgebraicInteger",
            Error::ConductorMismatch { .. } => "ConductorMismatch",
            Error::IntegralityFailure => "IntegralityFailure",
            Error::InvalidTable(_) => "InvalidTable",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::NoDominatedBlock => "NoDominatedBlock",
            Error::NotCyclicDefect => "NotCyclicDefect",
            Error::CentralDefect => "CentralDefect",
            Error::TrivialDefect => "TrivialDefect",
            Error::InconsistentCount { .. } => "InconsistentCount",
            Error::NotATree(_) => "NotATree",
            Error::AmbiguousBrauerTree(_) => "AmbiguousBrauerTree",
            Error::NegativeDegree => "NegativeDegree",
            Error::NotSupported(_) => "NotSupported",
            Error::CorrespondentNotFound => "CorrespondentNotFound",
            Error::NotAnAutomorphism => "NotAnAutomorphism",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::UnsupportedSeries(_) => "UnsupportedSeries",
            Error::RealizationMismatch(_) => "RealizationMismatch",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },

    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("node '{0}' is not in the graph")]
    UnknownNode(String),

    #[error("node '{0}' has no cluster assignment")]
    MissingNode(String),

    #[error("node '{0}' is assigned more than once")]
    DuplicateNode(String),

    #[error("operation requires a binary graph; threshold weighted graphs first")]
    WeightedGraph,

    #[error("spillover-free clustering impossible: every neighbor is cross-cluster")]
    DegenerateBias,

    #[error("xi grid is empty")]
    EmptyGrid,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NonSymmetric(f64),

    #[error("requested {k} clusters for {n} points")]
    KTooLarge { k: usize, n: usize },

    #[error("solver stopped after {iterations} iterations (primal {primal:e}, dual {dual:e})")]
    MaxIterExceeded {
        iterations: usize,
        primal: f64,
        dual: f64,
    },

    #[error("graph has {n} nodes, above the dense-matrix limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("peer-effect system is singular (|gamma| = {0} must be < 1)")]
    SingularSystem(f64),

    #[error("{k} clusters exceed the enumeration limit of {limit}")]
    TooManyClusters { k: usize, limit: usize },

    #[error("design matrix is rank deficient")]
    RankDeficient,

    #[error("regression needs more rows ({rows}) than columns ({cols})")]
    TooFewRows { rows: usize, cols: usize },

    #[error("spillover bound must be positive, got {0}")]
    NonpositivePhi(f64),

    #[error("no node has a neighbor")]
    NoNeighbors,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable variant name, surfaced verbatim by the command-line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyGraph => "EmptyGraph",
            Error::MalformedLine { .. } => "MalformedLine",
            Error::NegativeWeight { .. } => "NegativeWeight",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::UnknownNode(_) => "UnknownNode",
            Error::MissingNode(_) => "MissingNode",
            Error::DuplicateNode(_) => "DuplicateNode",
            Error::WeightedGraph => "WeightedGraph",
            Error::DegenerateBias => "DegenerateBias",
            Error::EmptyGrid => "EmptyGrid",
            Error::NonSymmetric(_) => "NonSymmetric",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::MaxIterExceeded { .. } => "MaxIterExceeded",
            Error::TooLarge { .. } => "TooLarge",
            Error::SingularSystem(_) => "SingularSystem",
            Error::TooManyClusters { .. } => "TooManyClusters",
            Error::RankDeficient => "RankDeficient",
            Error::TooFewRows { .. } => "TooFewRows",
            Error::NonpositivePhi(_) => "NonpositivePhi",
            Error::NoNeighbors => "NoNeighbors",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "Io",
            Error::Csv(_) => "Csv",
            Error::Json(_) => "Json",
        }
    }
}

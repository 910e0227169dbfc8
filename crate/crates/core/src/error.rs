use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge {{{0}, {1}}} joins coincident points")]
    CoincidentEndpoints(usize, usize),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("need at least {needed} vertices in dimension {dim}, got {got}")]
    TooFewVertices {
        needed: usize,
        dim: usize,
        got: usize,
    },
    #[error("pair load needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("load is not an equilibrium load")]
    NotEquilibrium,
    #[error("generator {0} is not orthogonal")]
    NonOrthogonal(usize),
    #[error("group closure exceeded {0} elements")]
    ClosureCapExceeded(usize),
    #[error("invalid group parameter: {0}")]
    InvalidGroup(String),
    #[error("invalid type map: {0}")]
    InvalidTypeMap(String),
    #[error("configuration is not compatible with the group and type map")]
    Incompatible,
    #[error("no built-in character table for this group; supply one")]
    UnknownCharacterTable,
    #[error("invalid character table: {0}")]
    InvalidCharacterTable(String),
    #[error("multiplicity of {irrep} is {value}, not an integer")]
    NonIntegralMultiplicity { irrep: String, value: f64 },
    #[error("isotypic projector for {0} is not idempotent")]
    ProjectorNotIdempotent(String),
    #[error("isotypic components span {got} of {expected} dimensions")]
    IncompleteDecomposition { got: usize, expected: usize },
    #[error("points span an affine subspace of dimension {span}, need {dim}")]
    SpanDeficient { span: usize, dim: usize },
    #[error("off-block residual {residual:e} exceeds {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },
    #[error("negative dimension for {0}; tolerance too loose or too tight")]
    NegativeDimension(String),
    #[error("type map search exceeded {0} partial states")]
    SearchCapExceeded(usize),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for a quiver with {vertices} vertices")]
    VertexOutOfRange { index: usize, vertices: usize },
    #[error("quiver must have at least one vertex")]
    EmptyQuiver,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("quiver has an oriented cycle; path counts are infinite")]
    Cyclic,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("arrow {arrow}: matrix shape {got_rows}x{got_cols}, expected {rows}x{cols}")]
    BadArrowMatrix {
        arrow: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("map is not a morphism of representations")]
    NotIntertwiner,
    #[error("Kronecker parameter (0:0) does not define a point of the projective line")]
    ZeroParameter,
    #[error("tube rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid tube object: {0}")]
    InvalidTubeObject(String),
    #[error("orientation does not match the {0} diagram")]
    NotDynkin(String),
    #[error("Serre functor power did not become a shift within {0} steps")]
    BoundExceeded(usize),
    #[error("invalid weight type: {0}")]
    InvalidWeights(String),
    #[error("weight type {0} is not tubular (Euler characteristic {1})")]
    NotTubular(String, String),
    #[error("slope undefined: class has rank 0 and degree 0")]
    UndefinedSlope,
    #[error("spherical data invalid: {0}")]
    InvalidSphericalData(String),
    #[error("nonvanishing Ext(E,X): cone not homology-split-determined")]
    NonvanishingExt,
    #[error("L-sequence configuration invalid: {0}")]
    InvalidLConfig(String),
    #[error("slope {slope} lies inside the irrational bracket ({lo}, {hi}); tighten the bracket")]
    BracketTooWide {
        slope: String,
        lo: String,
        hi: String,
    },
    #[error("bracket ({0}, {1}) is empty")]
    EmptyBracket(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown export format {0:?}")]
    UnknownFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the geometric, combinatorial and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate covector")]
    DegenerateCovector,
    #[error("degenerate Newton polytope: points span an affine subspace of dimension {span} in R^{ambient}")]
    DegenerateSpan { span: usize, ambient: usize },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate lattice point {0:?}")]
    DuplicatePoint(Vec<i64>),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("missing weight on {0}-cell #{1}")]
    MissingWeight(usize, usize),
    #[error("unbalanced or non-realizable region graph: {0}")]
    NonRealizable(String),
    #[error("complex carries no dual subdivision data")]
    NoDualData,
    #[error("stratification requires maximal complex")]
    NotMaximal,
    #[error("dual cell {0:?} is not a unimodular simplex")]
    NotUnimodular(Vec<usize>),
    #[error("non-generic vertex: dual cell has {0} vertices")]
    NonGenericVertex(usize),
    #[error("maximal lifting for n={n}, d={d} failed unimodularity verification")]
    MaximalLiftingFailed { n: usize, d: usize },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodularMatrix(String),
    #[error("zero series")]
    ZeroSeries,
    #[error("tube undefined for a polynomial with fewer than two monomials")]
    SingleMonomial,
    #[error("point {0:?} is not a vertex of the triangulation")]
    NotAVertex(Vec<i64>),
    #[error("unsupported dimension {0} without projection")]
    UnsupportedDimension(usize),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

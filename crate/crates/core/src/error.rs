use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors do not form a lattice basis")]
    NotUnimodular,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polytope is empty")]
    Empty,

    #[error("polytope is not full-dimensional: affine hull has dimension {affine_dim} in ambient dimension {ambient}")]
    Degenerate { affine_dim: usize, ambient: usize },

    #[error("not a lattice polytope: vertex {0} is not integral")]
    NotLattice(String),

    #[error("polytope is not smooth at vertex {0}")]
    NotSmooth(String),

    #[error("summands {first} and {second} have different normal fans")]
    FanMismatch { first: usize, second: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed polytope file: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::Io(_) => 1,
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

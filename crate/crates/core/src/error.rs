use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("polyhedron is empty")]
    Empty,

    #[error("polyhedron is not full-dimensional (affine dimension {affine} in ambient dimension {ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },

    #[error("polyhedron contains a line; only pointed polyhedra are supported")]
    NotPointed,

    #[error("face is zero-dimensional")]
    ZeroDimensionalFace,

    #[error("not a face of the polyhedron: {0}")]
    NotAFace(String),

    #[error("vertex {vertex} is not simple: {facets} facets meet there")]
    NonSimpleVertex { vertex: String, facets: usize },

    #[error("face is not simplicial: {0}")]
    NonSimplicialFace(String),

    #[error("invalid wall: {0}")]
    InvalidWall(String),

    #[error("non-smooth data: {0}")]
    NonSmooth(String),

    #[error("cut is infeasible: {0}")]
    InfeasibleCut(String),

    #[error("unsupported singularity: {0}")]
    UnsupportedSingularity(String),

    #[error("sign pattern {0:?} reverses an odd number of coordinates")]
    OddSignFlip([i8; 4]),

    #[error("invalid coordinate plane ({0}, {1})")]
    InvalidPlane(usize, usize),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

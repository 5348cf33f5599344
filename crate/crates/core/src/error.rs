use thiserror::Error;

use crate::algebra::RingId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry does not lie in ring {0}")]
    ForeignEntry(RingId),
    #[error("d^2 != 0: composite d_{} . d_{} is nonzero", .degree - 1, .degree)]
    InvalidComplex { degree: i64 },
    #[error("q-image {0} is not a unit of the target ring")]
    NotAUnit(String),
    #[error("specialization is not well defined: {0}")]
    IllDefinedSpecialization(String),
    #[error("differential out of degree {degree} does not preserve auxiliary grading {index}")]
    GradingNotPreserved { degree: i64, index: usize },
    #[error("operation not supported over {ring}: {reason}")]
    UnsupportedRing { ring: RingId, reason: &'static str },
    #[error("malformed complex data: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnsideError {
    #[error("target of the first correspondence differs from source of the second")]
    MismatchedBoundary,
    #[error("correspondences live over different groups")]
    MismatchedGroup,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element orbit index {0} out of range")]
    InvalidElement(usize),
    #[error("arrow {index} references an orbit out of range")]
    InvalidArrow { index: usize },
    #[error("orbit labels are not distinct: {0}")]
    DuplicateOrbit(String),
    #[error("fibrewise bijection invalid: {0}")]
    NotABijection(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// First violation found by [`crate::cube::validate_cube`]. Vertices are
/// written as bit strings `u_1 u_2 ... u_n`, coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeViolation {
    #[error("face at {vertex} in coordinates ({i}, {j}): the two composites linearize differently")]
    LinearizationMismatch { vertex: String, i: usize, j: usize },
    #[error("face at {vertex} in coordinates ({i}, {j}): {reason}")]
    BadFaceEndpoints { vertex: String, i: usize, j: usize, reason: String },
    #[error("3-face at {vertex} in coordinates ({i}, {j}, {k}) does not commute")]
    IncoherentThreeFace { vertex: String, i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("{u} -> {v} is not a covering edge")]
    NotACoveringEdge { u: String, v: String },
    #[error("invalid cube: {0}")]
    InvalidCube(CubeViolation),
    #[error("module cube face at {vertex} in coordinates ({i}, {j}) does not commute")]
    NonCommutingFace { vertex: String, i: usize, j: usize },
    #[error("edge at {vertex} in coordinate {k}: entry ({row}, {col}) = {entry} is not ±q^k")]
    NonMonomialEntry { vertex: String, k: usize, row: usize, col: usize, entry: String },
    #[error("no coherent face matching: {0}")]
    NoCoherentMatching(String),
    #[error("malformed cube: {0}")]
    Malformed(String),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KhovanovError {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    /// Positions are 1-based.
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("structure map entry {0} is not ±q^k")]
    NonMonomialStructureMap(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
}

use thiserror::Error;

/// Errors raised by the library. Matrix indices carried in variants are
/// 1-based, matching how matrices are written on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is empty")]
    Empty,
    #[error("diagonal entry a_{0}{0} is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry a_{0},{1} is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("a_{0},{1} = 0 but a_{1},{0} != 0")]
    AsymmetricZero(usize, usize),
    #[error("Dynkin diagram is not connected")]
    NotIrreducible,
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("witness word does not map the simple root to the given root")]
    InvalidWitness,
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
    #[error("root basis axiom violated: {0}")]
    AxiomViolation(String),
    #[error("affine type: {0}")]
    AffineType(String),
    #[error("spherical type: {0}")]
    SphericalType(String),
    #[error("linear realization needs a non-affine irreducible matrix of size >= 2")]
    AffineOrRankOne,
    #[error("permutation is not a Dynkin diagram automorphism")]
    NotADiagramAutomorphism,
    #[error("involution set is not closed under conjugation: {0}")]
    NotClosed(String),
    #[error("parametrization is not a geodesic: {0}")]
    NotAGeodesic(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("determinant is not 1 within tolerance (det = {0})")]
    NotUnimodular(String),
    #[error("determinant is not a unit of the Laurent polynomial ring")]
    NonUnitDeterminant,
    #[error("diagonalizability is only decided for diagonal inputs and characteristic polynomials q(x)(x-1)^k with deg q <= 2 non-split")]
    NotFromExampleHole,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

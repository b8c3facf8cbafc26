use thiserror::Error;

use crate::linalg::Field;

/// Which half of the structure an identity check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Product,
    Bracket,
}

/// A single failed structure identity, indexed by basis triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `(e_i e_j) e_k != e_i (e_j e_k)`
    Associativity { i: usize, j: usize, k: usize },
    /// `[e_i e_j, e_k] != [e_i, e_k] e_j + e_i [e_j, e_k]`
    Identity1 { i: usize, j: usize, k: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("structure constants violate {} identities (first: {:?})", .0.len(), .0.first())]
    InvalidStructure(Vec<Violation>),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("subspace is not closed under product and bracket")]
    NotSubalgebra,
    #[error("kernel is not central: {op:?} of kernel vector {kernel_index} with basis vector {basis_index} is nonzero")]
    NotCentral {
        kernel_index: usize,
        basis_index: usize,
        op: Operation,
    },
    #[error("linear map does not preserve {0:?} at basis pair {1:?}")]
    NotAlgebraMap(Operation, (usize, usize)),
    #[error("map is not an algebra isomorphism")]
    NotIso,
    #[error("algebra is not abelian")]
    NotAbelian,
    #[error("extension is not stem")]
    NotStem,
    #[error("invalid isoclinism certificate: {0}")]
    InvalidCertificate(String),
    #[error("operation requires a prime field, got {0}")]
    UnsupportedField(Field),
    #[error("factor set fails the cocycle condition at ({0}, {1}, {2})")]
    CocycleViolation(usize, usize, usize),
    #[error("factor set fails the bracket compatibility condition at ({0}, {1}, {2})")]
    BracketCompatibilityViolation(usize, usize, usize),
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension guard exceeded: {dim} > {max}")]
    DimensionGuard { dim: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

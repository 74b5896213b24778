//! Bounded path algebras and weighted surface algebras.

mod build;
pub mod path;
mod symmetric;
mod wsa;

pub use build::{AlgElem, BoundedAlgebra, SparseVec};
pub use symmetric::{check_symmetric, idempotent_subalgebra, socle_elements, IdempotentSubalgebra, SymmetryReport};
pub use wsa::{presentations_agree, 
    eliminate_virtual, search_normalization, wsa_relations, Normalization, WeightedSurfaceAlgebra,
};

use thiserror::Error;

use crate::quiver::ValidationError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("truncation length {length} too small: dim {dim} at L, {dim_next} at L+1")]
    TruncationTooSmall {
        length: usize,
        dim: usize,
        dim_next: usize,
    },
    #[error("relation `{0}` is not homogeneous in (source, target)")]
    InhomogeneousRelation(String),
    #[error("lambda = {0} is not allowed for this family")]
    LambdaForbidden(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("virtual arrows could not be eliminated: {0}")]
    Elimination(String),
}

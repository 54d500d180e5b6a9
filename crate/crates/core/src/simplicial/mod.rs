//! Finitely generated simplicial sets in Eilenberg–Zilber normal form.

mod map;
mod nerve;
mod operator;
mod set;

pub use map::{MonoInverse, SimplicialMap};
pub use nerve::{discrete, empty, named_point, nerve_of_poset, point, standard_simplex, Poset};
pub use operator::{compose_operators, Operator, Surjection};
pub use set::{FormalSimplex, GenId, Generator, SimplicialSet, SimplicialSetBuilder, SourceTag};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("{what} index {index} out of range for dimension {dim}")]
    IndexOutOfRange { what: &'static str, index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(GenId),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid faces for generator `{generator}`: {reason}")]
    InvalidFaces { generator: String, reason: String },
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails on generator `{generator}`", j - 1)]
    IdentityViolation { generator: String, i: usize, j: usize },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid map `{map}`: {reason}")]
    InvalidMap { map: String, reason: String },
    #[error("map `{map}` does not commute with face {face} of generator `{generator}`")]
    NaturalityViolation { map: String, generator: String, face: usize },
    #[error("map `{map}` is not injective in degree {degree}: {first} and {second} collide")]
    NotMono { map: String, degree: usize, first: String, second: String },
    #[error("map `{map}` is only verified injective up to degree {bound}, degree {degree} requested")]
    BeyondVerifiedBound { map: String, degree: usize, bound: usize },
}

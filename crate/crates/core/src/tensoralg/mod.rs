//! Finite-dimensional algebras by structure constants, and the tensor conditions for
//! extended inner endomorphisms and derivations.

mod algebra;
mod derivation;
mod endo;
mod tensor;

pub use algebra::{algebra_validate, matrix_unit, AlgebraHom, AlgebraReport, AlgebraViolation, StructAlgebra};
pub use derivation::{
    check_derivation_generic, enumerate_derivations, extract_derivation_element, inner_derivation_of,
    DerivationCandidate, DerivationCheck, DerivationChecker, DerivationEnumeration,
};
pub use endo::{
    centralizer_of_image, check_endo_conditions, classify_inner_endo_algebra, enumerate_inner_endos,
    induced_endomorphism, induced_matrix, minimal_pair, pairs_equivalent, AlgebraInnerClass, CentralizerReport, EndoCandidate,
    EndoCheck, EndoFailure, EnumerationRoute, InducedEndomorphism, InnerEndoEnumeration, MinimalPair,
    DEFAULT_BUDGET,
};
pub use tensor::{TensorElement, DEFAULT_DIM_CAP, MAX_DEGREE};

use thiserror::Error;

use crate::exactmath::MathError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(AlgebraViolation),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("tensor degree {0} not supported (max 3)")]
    Degree(usize),
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("source and target algebras do not match")]
    AlgebraMismatch,
    #[error("not a unital homomorphism: fails on basis pair ({i},{j})")]
    NotAHomomorphism { i: usize, j: usize },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("internal error: the two routes for the same condition disagree")]
    InconsistentRoutes,
    #[error("internal error: passing candidate has minimal length {0}, expected 1")]
    RankContradiction(usize),
    #[error("internal error: induced map of a passing candidate is not a homomorphism")]
    HomomorphismViolation,
    #[error("internal error: induced map of a passing candidate has a kernel")]
    InjectivityViolation,
    #[error("internal error: passing derivation is not of the form 1⊗b − b⊗1")]
    TheoremViolation,
    #[error("search space {needed:?} exceeds budget {budget}")]
    BudgetExceeded { needed: Option<u64>, budget: u64 },
    #[error("enumeration needs a finite field")]
    InfiniteField,
}

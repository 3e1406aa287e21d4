//! Finite groups by Cayley table, reduced words in the free product `G ∗ F(X)`, and the
//! classification of extended inner endomorphisms of groups.
//!
//! An extended inner endomorphism is determined by the image `w(x)` of a generic element;
//! it respects products exactly when `w(x₀x₁) = w(x₀)w(x₁)` holds in `G⟨x₀, x₁⟩`. The only
//! solutions are `s·x·s⁻¹` and the empty word. [`classify_inner_endo_group`] recognises
//! those shapes syntactically, while [`check_generic_multiplicative`] decides the equation
//! by word arithmetic; the two are kept independent so one can audit the other.

mod classify;
mod group;
mod word;

pub use classify::{
    apply_extended, check_generic_multiplicative, classify_inner_endo_group, extendibility_search,
    inner_endo_monoid, GroupInnerClass, InnerEndoMonoid,
};
pub use group::{group_validate, FiniteGroup, GroupHom, GroupReport, GroupViolation};
pub use word::{
    enumerate_words, parse_word, word_multiply, word_substitute, ReducedWord, Syllable, VarId, VarNames,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeProdError {
    #[error("invalid group: {0}")]
    InvalidGroup(GroupViolation),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("not a homomorphism: f({a}·{b}) ≠ f({a})·f({b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("expected a word in one variable, found {0}")]
    WrongVariableCount(usize),
    #[error("class is not inner")]
    NotInnerClass,
    #[error("parse error: {0}")]
    Parse(String),
}

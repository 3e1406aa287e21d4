//! Noncommutative polynomials modulo oriented rewriting rules, with a diamond-lemma confluence
//! checker, Leavitt and enveloping-algebra presets, and checks for inner maps given by
//! presentations.

mod fp;
mod lie;
mod poly;
mod search;
mod system;

pub use fp::{
    apply_word, check_endo_fp, fp_witness_checks, leavitt_pair, leavitt_system, polynomial_rank, FpEndoCheck,
    FpWitnessReport, SampleWitness,
};
pub use lie::{
    ad_power_check, augmentation, lie_inner_derivation_check, pbw_system, AdPowerReport, LieData,
    LieDerivationReport,
};
pub use poly::{parse_polynomial, Monomial, NcPolynomial};
pub use search::{scalar_unit_search, UnitSearchReport, UnitSolution};
pub use system::{
    confluence_check, normal_form, normal_form_random, Ambiguity, AmbiguityKind, ConfluenceReport, RewriteSystem,
    Rule,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("rule {0} has an empty left side")]
    EmptyLhs(usize),
    #[error("rule {0} uses an unknown generator")]
    UnknownGenerator(usize),
    #[error("rule {0} does not decrease the monomial order")]
    NotDecreasing(usize),
    #[error("Leavitt presets need n >= 2, got {0}")]
    LeavittRank(usize),
    #[error("a and b have different lengths ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("bracket table has the wrong shape")]
    Shape,
    #[error("bracket is not alternating at ({i},{j})")]
    AntisymmetryViolation { i: usize, j: usize },
    #[error("ad-power check needs positive characteristic")]
    CharacteristicZero,
    #[error("element has nonzero augmentation")]
    NonzeroAugmentation,
    #[error("search space {needed:?} exceeds budget {budget}")]
    BudgetExceeded { needed: Option<u64>, budget: u64 },
}

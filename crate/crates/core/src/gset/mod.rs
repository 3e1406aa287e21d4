//! Finite right G-sets and their extended co-inner automorphisms, parametrised by centralizers
//! of orbit stabilizers.

mod action;
mod coinner;

pub use action::{orbit_data, orbit_data_with, EquivariantMap, GSet, OrbitData, RepChoice};
pub use coinner::{
    apply_coinner, coinner_group, free_cover, naturality_oracle, CoInnerDatum, CoInnerGroup, OracleReport,
    ORACLE_BUDGET,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GSetError {
    #[error("action row {point} has the wrong length")]
    Shape { point: usize },
    #[error("action of element {element} on point {point} is out of range")]
    OutOfRange { point: usize, element: usize },
    #[error("not a right action: ({point}·{g})·{h} ≠ {point}·({g}{h})")]
    InvalidAction { point: usize, g: usize, h: usize },
    #[error("G-sets are over different groups")]
    GroupMismatch,
    #[error("map is not equivariant at point {point}, element {g}")]
    NotEquivariant { point: usize, g: usize },
    #[error("expected {expected} orbit choices, found {found}")]
    ChoiceLength { expected: usize, found: usize },
    #[error("element {element} does not centralize the stabilizer of {rep}")]
    NotCentralizing { rep: usize, element: usize },
    #[error("internal error: point {point} has no decomposition s·h")]
    NoDecomposition { point: usize },
    #[error("internal error: image of point {point} depends on the chosen decomposition")]
    NotWellDefined { point: usize },
    #[error("search size {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
}

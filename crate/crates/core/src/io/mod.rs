//! JSON input files. Every error carries a JSON pointer to the offending value.
//!
//! Scalars may be given as JSON integers or as strings in the `"n/d"` / `"k mod p"` format.

mod corpus;
mod read;
mod write;

pub use corpus::{corpus_file, CorpusResolver, CORPUS_FILES};
pub use read::{
    parse_algebra, parse_candidate, parse_group, parse_group_hom, parse_gset, parse_lie, parse_system, FsResolver,
    GSetFile, GroupHomFile, Resolver,
};
pub use write::{
    algebra_to_json, group_to_json, gset_to_json, lie_to_json, render_json, system_to_json, tensor_to_json,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("schema violation at {pointer:?}: {message}")]
    SchemaViolation { pointer: String, message: String },
    #[error("validation failure at {pointer:?}: {message}")]
    ValidationFailure { pointer: String, message: String },
}

impl IoError {
    pub fn pointer(&self) -> Option<&str> {
        match self {
            IoError::SchemaViolation { pointer, .. } | IoError::ValidationFailure { pointer, .. } => Some(pointer),
            _ => None,
        }
    }

    /// Names the file a nested document came from.
    pub(crate) fn in_file(self, path: &str) -> IoError {
        match self {
            IoError::SchemaViolation { pointer, message } => IoError::SchemaViolation {
                pointer,
                message: format!("{path}: {message}"),
            },
            IoError::ValidationFailure { pointer, message } => IoError::ValidationFailure {
                pointer,
                message: format!("{path}: {message}"),
            },
            IoError::Json { line, column, message } => IoError::Json {
                line,
                column,
                message: format!("{path}: {message}"),
            },
            other => other,
        }
    }
}

//! Exact scalars over `Q` and `GF(p)` plus dense row reduction.
//!
//! Nothing in this crate uses floating point; every identity is checked by exact equality.

mod matrix;
mod scalar;

pub use matrix::{rref_rank_kernel, Matrix, RowReduction};
pub use scalar::{is_prime, scalar_arith, ArithOp, Field, FieldSpec, Scalar, MAX_PRIME};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("binary operation needs a second operand")]
    MissingOperand,
}

/// Coordinate-vector helpers shared by the algebra modules.
pub mod vector {
    use super::{Field, Scalar};

    pub fn zeros(field: Field, n: usize) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zeros(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }

    pub fn neg(a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| -x).collect()
    }

    /// `y += c * x`
    pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi += &(c * xi);
            }
        }
    }

    /// Parses integers into `field`, e.g. `from_i64(f, &[1, 0, 0, -1])`.
    pub fn from_i64(field: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }
}

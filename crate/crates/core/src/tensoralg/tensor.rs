use crate::exactmath::{vector, Field, Matrix, Scalar};

use super::{StructAlgebra, TensorError};

pub const MAX_DEGREE: usize = 3;
pub const DEFAULT_DIM_CAP: usize = 8;

/// An element of `R^{⊗k}` (`k ≤ 3`) in the basis `e_{i₁} ⊗ … ⊗ e_{i_k}`, little index last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    dim: usize,
    degree: usize,
    field: Field,
    coords: Vec<Scalar>,
}

impl TensorElement {
    pub fn zeros(field: Field, dim: usize, degree: usize) -> Result<TensorElement, TensorError> {
        TensorElement::zeros_capped(field, dim, degree, DEFAULT_DIM_CAP)
    }

    pub fn zeros_capped(field: Field, dim: usize, degree: usize, cap: usize) -> Result<TensorElement, TensorError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(TensorError::Degree(degree));
        }
        if dim > cap {
            return Err(TensorError::DimensionCap { dim, cap });
        }
        Ok(TensorElement {
            dim,
            degree,
            field,
            coords: vector::zeros(field, dim.pow(degree as u32)),
        })
    }

    pub fn from_coords(field: Field, dim: usize, degree: usize, coords: Vec<Scalar>) -> Result<TensorElement, TensorError> {
        let mut t = TensorElement::zeros(field, dim, degree)?;
        if coords.len() != t.coords.len() {
            return Err(TensorError::Shape {
                expected: t.coords.len(),
                found: coords.len(),
            });
        }
        if coords.iter().any(|c| c.field() != field) {
            return Err(TensorError::FieldMismatch);
        }
        t.coords = coords;
        Ok(t)
    }

    /// The degree-2 tensor whose coefficient matrix is `m`, i.e. `Σ m_ij e_i ⊗ e_j`.
    pub fn from_matrix(m: &Matrix) -> Result<TensorElement, TensorError> {
        if m.rows() != m.cols() {
            return Err(TensorError::Shape {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        TensorElement::from_coords(m.field(), m.rows(), 2, m.entries().to_vec())
    }

    /// `Σ aᵢ ⊗ bᵢ`
    pub fn from_pairs(field: Field, dim: usize, pairs: &[(Vec<Scalar>, Vec<Scalar>)]) -> Result<TensorElement, TensorError> {
        let mut t = TensorElement::zeros(field, dim, 2)?;
        for (a, b) in pairs {
            if a.len() != dim || b.len() != dim {
                return Err(TensorError::Shape {
                    expected: dim,
                    found: a.len().max(b.len()),
                });
            }
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        t.coords[i * dim + j] += &(x * y);
                    }
                }
            }
        }
        Ok(t)
    }

    /// `1 ⊗ 1`
    pub fn unit_square(r: &StructAlgebra) -> Result<TensorElement, TensorError> {
        TensorElement::from_pairs(r.field(), r.dim(), &[(r.one(), r.one())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.coords[self.flat(idx)]
    }

    pub fn add_at(&mut self, idx: &[usize], c: &Scalar) {
        let k = self.flat(idx);
        self.coords[k] += c;
    }

    fn flat(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.degree);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coords)
    }

    /// Coefficient matrix of a degree-2 tensor.
    pub fn coefficient_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 2);
        Matrix::new(self.field, self.dim, self.dim, self.coords.clone()).expect("square")
    }

    /// Nonzero entries as `(multi-index, coefficient)`.
    pub fn terms(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut idx = vec![0; self.degree];
                let mut rest = k;
                for slot in idx.iter_mut().rev() {
                    *slot = rest % self.dim;
                    rest /= self.dim;
                }
                (idx, c.clone())
            })
            .collect()
    }

    pub fn render(&self, r: &StructAlgebra) -> String {
        let terms: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(idx, c)| {
                let body: Vec<&str> = idx.iter().map(|&i| r.names()[i].as_str()).collect();
                if c.is_one() {
                    body.join("⊗")
                } else {
                    format!("({c})·{}", body.join("⊗"))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_cap_enforced() {
        let q = Field::Rational;
        assert_eq!(TensorElement::zeros(q, 2, 4).unwrap_err(), TensorError::Degree(4));
        assert_eq!(
            TensorElement::zeros(q, 9, 2).unwrap_err(),
            TensorError::DimensionCap { dim: 9, cap: 8 }
        );
        assert!(TensorElement::zeros(q, 8, 3).is_ok());
    }

    #[test]
    fn pairs_expand_bilinearly() {
        let q = Field::Rational;
        let a = vector::from_i64(q, &[1, 2]);
        let b = vector::from_i64(q, &[0, 3]);
        let t = TensorElement::from_pairs(q, 2, &[(a, b)]).unwrap();
        assert_eq!(t.coords(), vector::from_i64(q, &[0, 3, 0, 6]).as_slice());
        assert_eq!(t.get(&[1, 1]), &q.from_i64(6));
        assert_eq!(t.terms().len(), 2);
        assert_eq!(t.coefficient_matrix().rank(), 1);
    }
}

use std::fmt;

use super::{Field, MathError, Scalar};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Output of [`Matrix::rref_rank_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub kernel: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix, MathError> {
        if entries.len() != rows * cols {
            return Err(MathError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|x| x.field() != field) {
            return Err(MathError::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, MathError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MathError::Shape {
                expected: c,
                found: bad.len(),
            });
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix, MathError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(MathError::Shape {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                if x.field() != field {
                    return Err(MathError::FieldMismatch {
                        left: field,
                        right: x.field(),
                    });
                }
                m.entries[i * columns.len() + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "scalar field mismatch");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MathError> {
        if self.field != other.field {
            return Err(MathError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.cols != other.rows {
            return Err(MathError::Shape {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MathError> {
        if v.len() != self.cols {
            return Err(MathError::Shape {
                expected: self.cols,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|x| x.field() != self.field) {
            return Err(MathError::FieldMismatch {
                left: self.field,
                right: bad.field(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form, pivot columns, rank and a kernel basis.
    ///
    /// Pivots are chosen as the first nonzero entry at or below the current row, scanning
    /// columns left to right. Kernel vectors are the standard free-variable basis.
    pub fn rref_rank_kernel(&self) -> RowReduction {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_row_multiple(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        let mut kernel = Vec::new();
        let mut is_pivot = vec![false; m.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![m.field.zero(); m.cols];
            v[free] = m.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, free);
            }
            kernel.push(v);
        }
        RowReduction {
            rref: m,
            pivots,
            rank,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref_rank_kernel().rank
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.rref_rank_kernel().kernel
    }

    /// Some `X` with `self * X = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>, MathError> {
        if rhs.rows != self.rows {
            return Err(MathError::Shape {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        if rhs.field != self.field {
            return Err(MathError::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        let aug = self.hstack(rhs);
        let red = aug.rref_rank_kernel();
        if red.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (r, &p) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.entries[p * rhs.cols + j] = red.rref.get(r, self.cols + j).clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let x = self.solve(&id).ok().flatten()?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[r * cols + c] = self.get(r, c).clone();
            }
            for c in 0..other.cols {
                out.entries[r * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Scalar) {
        for c in 0..self.cols {
            self.entries[r * self.cols + c] *= factor;
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let s = &self.entries[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.entries[target * self.cols + c] -= &delta;
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Free function form of [`Matrix::rref_rank_kernel`].
pub fn rref_rank_kernel(m: &Matrix) -> RowReduction {
    m.rref_rank_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let red = Matrix::identity(Field::Rational, 3).rref_rank_kernel();
        assert_eq!(red.rank, 3);
        assert!(red.kernel.is_empty());
        assert_eq!(red.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let red = Matrix::zeros(Field::Rational, 2, 2).rref_rank_kernel();
        assert_eq!(red.rank, 0);
        assert_eq!(red.kernel.len(), 2);
    }

    #[test]
    fn proportional_rows() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        let red = m.rref_rank_kernel();
        assert_eq!(red.rank, 1);
        assert_eq!(red.kernel, vec![vec![q.from_i64(-2), q.from_i64(1)]]);
    }

    #[test]
    fn solve_and_inverse() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f5, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f5, 2));
        let singular = Matrix::from_i64(f5, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        let rhs = Matrix::from_i64(f5, &[&[1], &[0]]);
        assert!(singular.solve(&rhs).unwrap().is_none());
    }

    #[test]
    fn shape_and_field_errors() {
        let q = Field::Rational;
        assert!(Matrix::new(q, 2, 2, vec![q.one()]).is_err());
        let f2 = Field::prime(2).unwrap();
        assert!(Matrix::new(q, 1, 1, vec![f2.one()]).is_err());
        let a = Matrix::identity(q, 2);
        let b = Matrix::identity(f2, 2);
        assert!(a.mul(&b).is_err());
    }
}

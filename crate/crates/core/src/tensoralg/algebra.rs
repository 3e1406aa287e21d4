use std::fmt;

use crate::exactmath::{vector, Field, Matrix, Scalar};

use super::TensorError;

/// First violated axiom found by [`algebra_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Empty,
    Shape,
    FieldMismatch,
    /// The basis must contain `1` as basis vector 0.
    UnitNotFirstBasisVector,
    /// `1·e_i ≠ e_i` or `e_i·1 ≠ e_i`.
    UnitNotIdentity { basis: usize },
    NotAssociative { i: usize, j: usize, k: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Empty => write!(f, "zero-dimensional algebra"),
            AlgebraViolation::Shape => write!(f, "structure constants have the wrong shape"),
            AlgebraViolation::FieldMismatch => write!(f, "structure constants mix fields"),
            AlgebraViolation::UnitNotFirstBasisVector => write!(f, "unit axiom: 1 must be basis vector 0"),
            AlgebraViolation::UnitNotIdentity { basis } => {
                write!(f, "unit axiom: 1 does not act as identity on basis vector {basis}")
            }
            AlgebraViolation::NotAssociative { i, j, k } => write!(f, "associativity fails on ({i},{j},{k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub dim: usize,
    pub violation: Option<AlgebraViolation>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// A finite-dimensional unital associative algebra given by structure constants
/// `e_i e_j = Σ_k c[i][j][k] e_k`.
///
/// Basis vector 0 is the unit. The coordinate-0 functional is the splitting `R → K` used
/// for derivations; its kernel is spanned by the remaining basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    dim: usize,
    field: Field,
    /// `products[i * dim + j]` is the coordinate vector of `e_i e_j`.
    products: Vec<Vec<Scalar>>,
    /// Sparse view of `products`.
    sparse: Vec<Vec<(usize, Scalar)>>,
    names: Vec<String>,
    /// Matrices realising the basis, when the algebra was built from a matrix basis.
    representation: Option<Vec<Matrix>>,
}

impl StructAlgebra {
    /// Validated constructor from a `dim × dim × dim` array and a unit vector.
    pub fn new(
        field: Field,
        structure: Vec<Vec<Vec<Scalar>>>,
        unit: &[Scalar],
        names: Option<Vec<String>>,
    ) -> Result<StructAlgebra, TensorError> {
        let dim = structure.len();
        if dim == 0 {
            return Err(TensorError::InvalidAlgebra(AlgebraViolation::Empty));
        }
        let mut products = Vec::with_capacity(dim * dim);
        for row in structure {
            if row.len() != dim {
                return Err(TensorError::InvalidAlgebra(AlgebraViolation::Shape));
            }
            for v in row {
                if v.len() != dim {
                    return Err(TensorError::InvalidAlgebra(AlgebraViolation::Shape));
                }
                if v.iter().any(|x| x.field() != field) {
                    return Err(TensorError::InvalidAlgebra(AlgebraViolation::FieldMismatch));
                }
                products.push(v);
            }
        }
        if unit.len() != dim || unit.iter().any(|x| x.field() != field) {
            return Err(TensorError::InvalidAlgebra(AlgebraViolation::Shape));
        }
        if unit != vector::unit(field, dim, 0).as_slice() {
            return Err(TensorError::InvalidAlgebra(AlgebraViolation::UnitNotFirstBasisVector));
        }
        let r = StructAlgebra::from_products(field, dim, products, names);
        match algebra_validate(&r).violation {
            Some(v) => Err(TensorError::InvalidAlgebra(v)),
            None => Ok(r),
        }
    }

    /// Unvalidated constructor; callers run [`algebra_validate`] when the table is untrusted.
    pub fn from_products(
        field: Field,
        dim: usize,
        products: Vec<Vec<Scalar>>,
        names: Option<Vec<String>>,
    ) -> StructAlgebra {
        assert_eq!(products.len(), dim * dim);
        let sparse = products
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect()
            })
            .collect();
        let names = names.unwrap_or_else(|| default_names(dim));
        StructAlgebra {
            dim,
            field,
            products,
            sparse,
            names,
            representation: None,
        }
    }

    /// Builds the algebra from a closure giving `e_i e_j`.
    pub fn from_fn<F>(field: Field, dim: usize, names: Option<Vec<String>>, mut product: F) -> StructAlgebra
    where
        F: FnMut(usize, usize) -> Vec<Scalar>,
    {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                products.push(product(i, j));
            }
        }
        StructAlgebra::from_products(field, dim, products, names)
    }

    /// Subalgebra of `M_n(K)` spanned by the given matrices; `basis[0]` must be the identity.
    pub fn from_matrix_basis(
        field: Field,
        basis: Vec<Matrix>,
        names: Option<Vec<String>>,
    ) -> Result<StructAlgebra, TensorError> {
        let dim = basis.len();
        let n = basis.first().map(Matrix::rows).ok_or(TensorError::InvalidAlgebra(AlgebraViolation::Empty))?;
        if basis[0] != Matrix::identity(field, n) {
            return Err(TensorError::InvalidAlgebra(AlgebraViolation::UnitNotFirstBasisVector));
        }
        let columns: Vec<Vec<Scalar>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let span = Matrix::from_columns(field, n * n, &columns)?;
        if span.rank() != dim {
            return Err(TensorError::InvalidAlgebra(AlgebraViolation::Shape));
        }
        let mut rhs_cols = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                rhs_cols.push(a.mul(b)?.entries().to_vec());
            }
        }
        let rhs = Matrix::from_columns(field, n * n, &rhs_cols)?;
        let coords = span
            .solve(&rhs)?
            .ok_or(TensorError::InvalidAlgebra(AlgebraViolation::Shape))?;
        let products = coords.columns();
        let mut r = StructAlgebra::from_products(field, dim, products, names);
        r.representation = Some(basis);
        Ok(r)
    }

    /// `M_n(K)` on the basis `1, E_ij ((i,j) ≠ (1,1))`, names `1, e12, …` (1-based).
    pub fn matrix_algebra(n: usize, field: Field) -> StructAlgebra {
        let mut basis = vec![Matrix::identity(field, n)];
        let mut names = vec!["1".to_string()];
        for i in 0..n {
            for j in 0..n {
                if (i, j) != (0, 0) {
                    basis.push(matrix_unit(field, n, i, j));
                    names.push(format!("e{}{}", i + 1, j + 1));
                }
            }
        }
        StructAlgebra::from_matrix_basis(field, basis, Some(names)).expect("matrix units span M_n")
    }

    /// Upper-triangular `n × n` matrices, basis `1, E_ij (i < j), E_ii (i > 1)`.
    pub fn upper_triangular(n: usize, field: Field) -> StructAlgebra {
        let mut basis = vec![Matrix::identity(field, n)];
        let mut names = vec!["1".to_string()];
        for i in 0..n {
            for j in i..n {
                if (i, j) != (0, 0) {
                    basis.push(matrix_unit(field, n, i, j));
                    names.push(format!("e{}{}", i + 1, j + 1));
                }
            }
        }
        StructAlgebra::from_matrix_basis(field, basis, Some(names)).expect("triangular matrix units")
    }

    /// `K[z]/(z^k)` on the basis `1, z, …, z^{k-1}`.
    pub fn truncated_polynomial(field: Field, k: usize) -> StructAlgebra {
        let names = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            })
            .collect();
        StructAlgebra::from_fn(field, k, Some(names), |i, j| {
            if i + j < k {
                vector::unit(field, k, i + j)
            } else {
                vector::zeros(field, k)
            }
        })
    }

    /// `K` itself.
    pub fn ground_field(field: Field) -> StructAlgebra {
        StructAlgebra::from_fn(field, 1, Some(vec!["1".into()]), |_, _| vec![field.one()])
    }

    /// `self ⊗ other` on the basis `e_i ⊗ f_j`, index `i * other.dim + j`.
    pub fn tensor_product(&self, other: &StructAlgebra) -> StructAlgebra {
        assert_eq!(self.field, other.field);
        let (d1, d2) = (self.dim, other.dim);
        let names = (0..d1 * d2)
            .map(|idx| format!("{}⊗{}", self.names[idx / d2], other.names[idx % d2]))
            .collect();
        StructAlgebra::from_fn(self.field, d1 * d2, Some(names), |p, q| {
            let (i, j) = (p / d2, p % d2);
            let (k, l) = (q / d2, q % d2);
            let mut out = vector::zeros(self.field, d1 * d2);
            for (m, x) in &self.sparse[i * d1 + k] {
                for (n, y) in &other.sparse[j * d2 + l] {
                    out[m * d2 + n] += &(x * y);
                }
            }
            out
        })
    }

    /// `R[ε]/(ε²)` on the basis `e_0 … e_{d-1}, εe_0 … εe_{d-1}`.
    pub fn dual_numbers(&self) -> StructAlgebra {
        let d = self.dim;
        let names = (0..2 * d)
            .map(|i| if i < d { self.names[i].clone() } else { format!("ε{}", self.names[i - d]) })
            .collect();
        StructAlgebra::from_fn(self.field, 2 * d, Some(names), |i, j| {
            let mut out = vector::zeros(self.field, 2 * d);
            let (bi, ei) = (i % d, i >= d);
            let (bj, ej) = (j % d, j >= d);
            if ei && ej {
                return out;
            }
            let offset = if ei || ej { d } else { 0 };
            for (k, x) in &self.sparse[bi * d + bj] {
                out[offset + k] = x.clone();
            }
            out
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn representation(&self) -> Option<&[Matrix]> {
        self.representation.as_deref()
    }

    pub fn one(&self) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, 0)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vector::zeros(self.field, self.dim)
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim + j]
    }

    /// `c[i][j][k]` as nested vectors.
    pub fn structure(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vector::zeros(self.field, d);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.sparse[i * d + j] {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// `a·e_j`
    pub fn mul_basis_right(&self, a: &[Scalar], j: usize) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vector::zeros(self.field, d);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in &self.sparse[i * d + j] {
                out[*k] += &(x * c);
            }
        }
        out
    }

    /// `e_i·b`
    pub fn mul_basis_left(&self, i: usize, b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vector::zeros(self.field, d);
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (k, c) in &self.sparse[i * d + j] {
                out[*k] += &(y * c);
            }
        }
        out
    }

    pub fn commutator(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        vector::sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul_basis_right(a, j)).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.mul_basis_left(i, a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        let l = self.left_mult_matrix(a);
        let one = Matrix::from_columns(self.field, self.dim, &[self.one()]).ok()?;
        let v = l.solve(&one).ok()??.column(0);
        (self.mul(&v, a) == self.one()).then_some(v)
    }

    /// Basis of `{s : s x = x s for all x in elements}`.
    pub fn centralizer(&self, elements: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut stacked: Option<Matrix> = None;
        for y in elements {
            // s ↦ s y - y s
            let mut m = self.right_mult_matrix(y);
            let l = self.left_mult_matrix(y);
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let v = m.get(r, c) - l.get(r, c);
                    m.set(r, c, v);
                }
            }
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        match stacked {
            None => (0..self.dim).map(|i| self.basis(i)).collect(),
            Some(m) => m.kernel(),
        }
    }

    pub fn center(&self) -> Vec<Vec<Scalar>> {
        let basis: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.basis(i)).collect();
        self.centralizer(&basis)
    }

    /// All elements, for algebras over a prime field, in lexicographic residue order.
    pub fn elements(&self) -> Option<Vec<Vec<Scalar>>> {
        let values = self.field.elements()?;
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim {
            out = out
                .into_iter()
                .flat_map(|v: Vec<Scalar>| {
                    values.iter().map(move |x| {
                        let mut w = v.clone();
                        w.push(x.clone());
                        w
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// The unit group, as `(u, u⁻¹)` pairs, for algebras over a prime field.
    pub fn units(&self) -> Option<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        Some(
            self.elements()?
                .into_iter()
                .filter_map(|u| self.inverse(&u).map(|v| (u, v)))
                .collect(),
        )
    }

    /// Coordinates of a matrix in the algebra's matrix basis, if it lies in the span.
    pub fn coords_of_matrix(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let basis = self.representation.as_ref()?;
        let n2 = m.rows() * m.cols();
        let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let span = Matrix::from_columns(self.field, n2, &columns).ok()?;
        let rhs = Matrix::from_columns(self.field, n2, &[m.entries().to_vec()]).ok()?;
        span.solve(&rhs).ok()?.map(|x| x.column(0))
    }

    /// The matrix represented by the given coordinates.
    pub fn to_matrix(&self, coords: &[Scalar]) -> Option<Matrix> {
        let basis = self.representation.as_ref()?;
        let n = basis[0].rows();
        let mut out = Matrix::zeros(self.field, n, n);
        for (c, b) in coords.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for r in 0..n {
                for k in 0..n {
                    let v = out.get(r, k) + &(c * b.get(r, k));
                    out.set(r, k, v);
                }
            }
        }
        Some(out)
    }

    /// Renders an element as a sum of named basis vectors.
    pub fn render(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.names[i].clone()
                } else {
                    format!("({c})·{}", self.names[i])
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

fn default_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| if i == 0 { "1".into() } else { format!("e{i}") }).collect()
}

pub fn matrix_unit(field: Field, n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    m.set(i, j, field.one());
    m
}

/// Checks the unit convention, the unit axioms, and associativity on all basis triples.
pub fn algebra_validate(r: &StructAlgebra) -> AlgebraReport {
    let d = r.dim;
    let report = |v| AlgebraReport {
        dim: d,
        violation: Some(v),
    };
    if d == 0 {
        return report(AlgebraViolation::Empty);
    }
    for i in 0..d {
        let e = r.basis(i);
        if r.basis_product(0, i) != e.as_slice() || r.basis_product(i, 0) != e.as_slice() {
            return report(AlgebraViolation::UnitNotIdentity { basis: i });
        }
    }
    for i in 0..d {
        for j in 0..d {
            let ij = r.basis_product(i, j);
            for k in 0..d {
                let left = r.mul_basis_right(ij, k);
                let right = r.mul_basis_left(i, r.basis_product(j, k));
                if left != right {
                    return report(AlgebraViolation::NotAssociative { i, j, k });
                }
            }
        }
    }
    AlgebraReport { dim: d, violation: None }
}

/// A verified unital algebra homomorphism, as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug)]
pub struct AlgebraHom<'a> {
    source: &'a StructAlgebra,
    target: &'a StructAlgebra,
    matrix: Matrix,
}

impl<'a> AlgebraHom<'a> {
    pub fn new(source: &'a StructAlgebra, target: &'a StructAlgebra, matrix: Matrix) -> Result<Self, TensorError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() || matrix.field() != source.field() {
            return Err(TensorError::AlgebraMismatch);
        }
        let f = AlgebraHom { source, target, matrix };
        if f.apply(&source.one()) != target.one() {
            return Err(TensorError::NotAHomomorphism { i: 0, j: 0 });
        }
        let images: Vec<Vec<Scalar>> = (0..source.dim()).map(|i| f.matrix.column(i)).collect();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = f.apply(source.basis_product(i, j));
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(TensorError::NotAHomomorphism { i, j });
                }
            }
        }
        Ok(f)
    }

    /// From the images of the basis vectors of `source`.
    pub fn from_images(
        source: &'a StructAlgebra,
        target: &'a StructAlgebra,
        images: &[Vec<Scalar>],
    ) -> Result<Self, TensorError> {
        let m = Matrix::from_columns(source.field(), target.dim(), images)?;
        AlgebraHom::new(source, target, m)
    }

    pub fn identity(r: &'a StructAlgebra) -> Self {
        AlgebraHom {
            source: r,
            target: r,
            matrix: Matrix::identity(r.field(), r.dim()),
        }
    }

    /// `x ↦ u x u⁻¹` on `r`.
    pub fn conjugation(r: &'a StructAlgebra, u: &[Scalar]) -> Result<Self, TensorError> {
        let u_inv = r.inverse(u).ok_or(TensorError::NotInvertible)?;
        let images: Vec<Vec<Scalar>> = (0..r.dim()).map(|i| r.mul(&r.mul_basis_right(u, i), &u_inv)).collect();
        AlgebraHom::from_images(r, r, &images)
    }

    pub fn source(&self) -> &'a StructAlgebra {
        self.source
    }

    pub fn target(&self) -> &'a StructAlgebra {
        self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v).expect("dimension checked at construction")
    }

    /// `self ∘ first`
    pub fn after(&self, first: &AlgebraHom<'a>) -> Result<AlgebraHom<'a>, TensorError> {
        if first.target != self.source {
            return Err(TensorError::AlgebraMismatch);
        }
        Ok(AlgebraHom {
            source: first.source,
            target: self.target,
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn m2_matrix_units_are_valid() {
        let r = StructAlgebra::matrix_algebra(2, gf2());
        assert_eq!(r.dim(), 4);
        assert!(algebra_validate(&r).is_valid());
        assert_eq!(r.center().len(), 1);
        assert_eq!(r.units().unwrap().len(), 6);
    }

    #[test]
    fn matrix_unit_products() {
        let q = Field::Rational;
        let r = StructAlgebra::matrix_algebra(2, q);
        let e = |i, j| r.coords_of_matrix(&matrix_unit(q, 2, i, j)).unwrap();
        for (i, j, k, l) in itertools_quad() {
            let prod = r.mul(&e(i, j), &e(k, l));
            let expected = if j == k { e(i, l) } else { r.zero() };
            assert_eq!(prod, expected);
        }
    }

    fn itertools_quad() -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        v.push((i, j, k, l));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn broken_associativity_reported() {
        let f = gf2();
        let k = StructAlgebra::truncated_polynomial(f, 3);
        let mut s = k.structure();
        // z·z² = z
        s[1][2] = vec![f.zero(), f.one(), f.zero()];
        let err = StructAlgebra::new(f, s, &k.one(), None).unwrap_err();
        assert!(matches!(
            err,
            TensorError::InvalidAlgebra(AlgebraViolation::NotAssociative { .. })
        ));
    }

    #[test]
    fn ground_field_is_valid() {
        assert!(algebra_validate(&StructAlgebra::ground_field(gf2())).is_valid());
        assert!(algebra_validate(&StructAlgebra::ground_field(Field::Rational)).is_valid());
    }

    #[test]
    fn wrong_unit_rejected() {
        let f = Field::Rational;
        let r = StructAlgebra::truncated_polynomial(f, 2);
        let err = StructAlgebra::new(f, r.structure(), &[f.zero(), f.one()], None).unwrap_err();
        assert_eq!(err, TensorError::InvalidAlgebra(AlgebraViolation::UnitNotFirstBasisVector));
        let mut s = r.structure();
        s[0][1] = vec![f.zero(), f.from_i64(2)];
        let err = StructAlgebra::new(f, s, &r.one(), None).unwrap_err();
        assert_eq!(err, TensorError::InvalidAlgebra(AlgebraViolation::UnitNotIdentity { basis: 1 }));
    }

    #[test]
    fn tensor_and_dual_constructions_are_associative() {
        let f = gf2();
        let r = StructAlgebra::upper_triangular(2, f);
        assert!(algebra_validate(&r.tensor_product(&r)).is_valid());
        assert!(algebra_validate(&r.dual_numbers()).is_valid());
        assert_eq!(r.dual_numbers().dim(), 6);
    }

    #[test]
    fn conjugation_is_a_hom() {
        let f = gf2();
        let r = StructAlgebra::matrix_algebra(2, f);
        for (u, _) in r.units().unwrap() {
            let c = AlgebraHom::conjugation(&r, &u).unwrap();
            assert!(c.is_injective());
        }
        let nonunit = r.coords_of_matrix(&matrix_unit(f, 2, 0, 0)).unwrap();
        assert_eq!(AlgebraHom::conjugation(&r, &nonunit).unwrap_err(), TensorError::NotInvertible);
    }
}

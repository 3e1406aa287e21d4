use rayon::prelude::*;

use crate::exactmath::{vector, Matrix, Scalar};

use super::endo::check_tensor;
use super::{AlgebraHom, StructAlgebra, TensorElement, TensorError};

/// A candidate `w(x) = Σ w_ij e_i x e_j` for an extended inner derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCandidate {
    pub w: TensorElement,
    /// Set once `w = 1⊗b − b⊗1` has been verified.
    pub extracted_b: Option<Vec<Scalar>>,
}

impl DerivationCandidate {
    pub fn new(w: TensorElement) -> DerivationCandidate {
        DerivationCandidate { w, extracted_b: None }
    }

    /// `x ↦ Σ w_ij e_i x e_j` in `r`.
    pub fn apply(&self, r: &StructAlgebra, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = r.zero();
        for (idx, c) in self.w.terms() {
            let t = r.mul(&r.mul_basis_left(idx[0], x), &r.basis(idx[1]));
            vector::axpy(&mut out, &c, &t);
        }
        out
    }

    /// Matrix of `d_f(s) = Σ w_ij f(e_i) s f(e_j)` on the target of `f`.
    pub fn induced_matrix(&self, f: &AlgebraHom<'_>) -> Result<Matrix, TensorError> {
        check_tensor(&self.w, f.source(), 2)?;
        let s = f.target();
        let images: Vec<Vec<Scalar>> = (0..f.source().dim()).map(|i| f.matrix().column(i)).collect();
        let terms = self.w.terms();
        let cols: Vec<Vec<Scalar>> = (0..s.dim())
            .map(|x| {
                let mut out = s.zero();
                for (idx, c) in &terms {
                    let t = s.mul(&s.mul_basis_right(&images[idx[0]], x), &images[idx[1]]);
                    vector::axpy(&mut out, c, &t);
                }
                out
            })
            .collect();
        Ok(Matrix::from_columns(s.field(), s.dim(), &cols)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCheck {
    /// The Leibniz identity in `R⊗R⊗R`.
    pub generic_ok: bool,
    /// `s ↦ s + ε·d(s)` is an algebra map `R → R[ε]/(ε²)`.
    pub oracle_ok: bool,
}

impl DerivationCheck {
    pub fn passed(&self) -> bool {
        self.generic_ok
    }
}

/// Reusable checker holding `R[ε]/(ε²)`.
pub struct DerivationChecker<'a> {
    r: &'a StructAlgebra,
    dual: StructAlgebra,
}

impl<'a> DerivationChecker<'a> {
    pub fn new(r: &'a StructAlgebra) -> DerivationChecker<'a> {
        DerivationChecker {
            r,
            dual: r.dual_numbers(),
        }
    }

    pub fn check(&self, d: &DerivationCandidate) -> Result<DerivationCheck, TensorError> {
        let r = self.r;
        check_tensor(&d.w, r, 2)?;
        let generic_ok = generic_leibniz(&d.w, r)?;
        let oracle_ok = self.oracle(d);
        // the generic identity specialises to every algebra, R included
        if generic_ok && !oracle_ok {
            return Err(TensorError::InconsistentRoutes);
        }
        Ok(DerivationCheck { generic_ok, oracle_ok })
    }

    fn oracle(&self, d: &DerivationCandidate) -> bool {
        let dim = self.r.dim();
        let images: Vec<Vec<Scalar>> = (0..dim)
            .map(|i| {
                let mut v = self.r.basis(i);
                v.extend(d.apply(self.r, &self.r.basis(i)));
                v
            })
            .collect();
        debug_assert_eq!(images[0].len(), self.dual.dim());
        AlgebraHom::from_images(self.r, &self.dual, &images).is_ok()
    }
}

fn generic_leibniz(w: &TensorElement, r: &StructAlgebra) -> Result<bool, TensorError> {
    let mut lhs = TensorElement::zeros(r.field(), r.dim(), 3)?;
    let mut rhs = lhs.clone();
    for (idx, c) in w.terms() {
        let (i, j) = (idx[0], idx[1]);
        lhs.add_at(&[i, 0, j], &c);
        rhs.add_at(&[i, j, 0], &c);
        rhs.add_at(&[0, i, j], &c);
    }
    Ok(lhs == rhs)
}

pub fn check_derivation_generic(d: &DerivationCandidate, r: &StructAlgebra) -> Result<DerivationCheck, TensorError> {
    DerivationChecker::new(r).check(d)
}

/// `b = (φ⊗id)(w)`, the representative with zero coefficient on `1`.
pub fn extract_derivation_element(d: &DerivationCandidate, r: &StructAlgebra) -> Result<Vec<Scalar>, TensorError> {
    check_tensor(&d.w, r, 2)?;
    let b = d.w.coefficient_matrix().row(0).to_vec();
    if inner_derivation_of(&b, r)?.w != d.w {
        return Err(TensorError::TheoremViolation);
    }
    Ok(b)
}

/// `w = 1⊗b − b⊗1`, i.e. `d(x) = x b − b x`.
pub fn inner_derivation_of(b: &[Scalar], r: &StructAlgebra) -> Result<DerivationCandidate, TensorError> {
    if b.len() != r.dim() {
        return Err(TensorError::Shape {
            expected: r.dim(),
            found: b.len(),
        });
    }
    let w = TensorElement::from_pairs(r.field(), r.dim(), &[(r.one(), b.to_vec()), (vector::neg(b), r.one())])?;
    Ok(DerivationCandidate { w, extracted_b: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationEnumeration {
    /// Passing tensors in lexicographic coordinate order.
    pub passing: Vec<TensorElement>,
    pub scanned: u64,
    /// Whether the passing set is exactly `{1⊗b − b⊗1 : b ∈ R}`.
    pub all_inner: bool,
    /// Tensors on which the dual-number oracle and the generic check disagree.
    pub oracle_disagreements: u64,
}

/// Scans all of `R⊗R` over a prime field.
pub fn enumerate_derivations(r: &StructAlgebra, budget: u64) -> Result<DerivationEnumeration, TensorError> {
    let field = r.field();
    let p = field.order().ok_or(TensorError::InfiniteField)?;
    let len = r.dim() * r.dim();
    let total = p.checked_pow(len as u32).filter(|&n| n <= budget).ok_or(TensorError::BudgetExceeded {
        needed: p.checked_pow(len as u32),
        budget,
    })?;
    let values = field.elements().expect("finite field");
    let checker = DerivationChecker::new(r);
    let results: Vec<(Option<TensorElement>, bool)> = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<(Option<TensorElement>, bool), TensorError> {
            let mut coords = vec![field.zero(); len];
            let mut rest = idx;
            for slot in coords.iter_mut().rev() {
                *slot = values[(rest % p) as usize].clone();
                rest /= p;
            }
            let d = DerivationCandidate::new(TensorElement::from_coords(field, r.dim(), 2, coords)?);
            let check = checker.check(&d)?;
            let disagree = check.generic_ok != check.oracle_ok;
            Ok((check.passed().then_some(d.w), disagree))
        })
        .collect::<Result<_, _>>()?;
    let oracle_disagreements = results.iter().filter(|(_, x)| *x).count() as u64;
    let passing: Vec<TensorElement> = results.into_iter().filter_map(|(w, _)| w).collect();
    let mut inner: Vec<TensorElement> = r
        .elements()
        .expect("finite field")
        .iter()
        .map(|b| inner_derivation_of(b, r).map(|d| d.w))
        .collect::<Result<_, _>>()?;
    inner.sort();
    inner.dedup();
    Ok(DerivationEnumeration {
        all_inner: inner == passing,
        passing,
        oracle_disagreements,
        scanned: total,
    })
}

#[cfg(test)]
mod tests {
    use super::super::matrix_unit;
    use super::*;
    use crate::exactmath::Field;

    fn e12(r: &StructAlgebra) -> Vec<Scalar> {
        r.coords_of_matrix(&matrix_unit(r.field(), 2, 0, 1)).unwrap()
    }

    #[test]
    fn generic_examples() {
        let q = Field::Rational;
        let r = StructAlgebra::matrix_algebra(2, q);
        let inner = inner_derivation_of(&vector::from_i64(q, &[3, -1, 2, 5]), &r).unwrap();
        let check = check_derivation_generic(&inner, &r).unwrap();
        assert!(check.generic_ok && check.oracle_ok);
        let zero = DerivationCandidate::new(TensorElement::zeros(q, 4, 2).unwrap());
        assert!(check_derivation_generic(&zero, &r).unwrap().passed());
        let one = DerivationCandidate::new(TensorElement::unit_square(&r).unwrap());
        let check = check_derivation_generic(&one, &r).unwrap();
        assert!(!check.generic_ok && !check.oracle_ok);
    }

    #[test]
    fn extraction_examples() {
        let q = Field::Rational;
        let r = StructAlgebra::matrix_algebra(2, q);
        let b = e12(&r);
        let d = inner_derivation_of(&b, &r).unwrap();
        assert_eq!(extract_derivation_element(&d, &r).unwrap(), b);
        let zero = DerivationCandidate::new(TensorElement::zeros(q, 4, 2).unwrap());
        assert_eq!(extract_derivation_element(&zero, &r).unwrap(), r.zero());
        let shifted = inner_derivation_of(&vector::add(&b, &r.one()), &r).unwrap();
        assert_eq!(extract_derivation_element(&shifted, &r).unwrap(), b);
        let one = DerivationCandidate::new(TensorElement::unit_square(&r).unwrap());
        assert_eq!(extract_derivation_element(&one, &r), Err(TensorError::TheoremViolation));
    }

    #[test]
    fn inner_derivation_examples() {
        let f = Field::prime(2).unwrap();
        let r = StructAlgebra::matrix_algebra(2, f);
        assert!(inner_derivation_of(&r.zero(), &r).unwrap().w.is_zero());
        assert!(inner_derivation_of(&r.one(), &r).unwrap().w.is_zero());
        let d = inner_derivation_of(&e12(&r), &r).unwrap();
        let e22 = r.coords_of_matrix(&matrix_unit(f, 2, 1, 1)).unwrap();
        assert_eq!(d.apply(&r, &e22), e12(&r));
    }

    #[test]
    fn derivations_of_m2_gf2_are_inner() {
        let f = Field::prime(2).unwrap();
        let r = StructAlgebra::matrix_algebra(2, f);
        let e = enumerate_derivations(&r, 1 << 16).unwrap();
        assert_eq!(e.passing.len(), 8);
        assert!(e.all_inner);
    }
}

use rayon::prelude::*;

use crate::exactmath::{Matrix, Scalar};

use super::{normal_form, Monomial, NcPolynomial, RewriteError, RewriteSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSolution {
    pub a: NcPolynomial,
    /// One `b` with `ba = 1`.
    pub b: NcPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSearchReport {
    pub basis_size: usize,
    pub scanned: u64,
    pub solutions: Vec<UnitSolution>,
    /// Solutions whose `a` is not a constant.
    pub nonscalar: Vec<UnitSolution>,
}

impl UnitSearchReport {
    pub fn only_scalars(&self) -> bool {
        self.nonscalar.is_empty()
    }
}

/// Searches `a` over combinations of irreducible words of degree `≤ degree_cap` with coefficients
/// in `coeffs`, solving `ba = 1` for `b` in the same span.
///
/// A bounded search: finding only scalars says nothing beyond the searched span.
pub fn scalar_unit_search(
    rs: &RewriteSystem,
    degree_cap: usize,
    coeffs: &[Scalar],
    budget: u64,
) -> Result<UnitSearchReport, RewriteError> {
    let basis = rs.irreducible_words(degree_cap);
    let k = coeffs.len() as u64;
    let total = k
        .checked_pow(basis.len() as u32)
        .filter(|&n| n <= budget)
        .ok_or(RewriteError::BudgetExceeded {
            needed: k.checked_pow(basis.len() as u32),
            budget,
        })?;
    let field = rs.field();
    let mut solutions: Vec<UnitSolution> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut a = NcPolynomial::zero(field);
            let mut rest = idx;
            for m in basis.iter().rev() {
                a.add_term(m.clone(), coeffs[(rest % k) as usize].clone());
                rest /= k;
            }
            if a.is_zero() {
                return None;
            }
            solve_left_inverse(&a, &basis, rs).map(|b| UnitSolution { a, b })
        })
        .collect();
    solutions.sort_by(|x, y| x.a.terms().iter().cmp(y.a.terms().iter()));
    let nonscalar = solutions
        .iter()
        .filter(|s| s.a.degree().is_some_and(|d| d > 0))
        .cloned()
        .collect();
    Ok(UnitSearchReport {
        basis_size: basis.len(),
        scanned: total,
        solutions,
        nonscalar,
    })
}

fn solve_left_inverse(a: &NcPolynomial, basis: &[Monomial], rs: &RewriteSystem) -> Option<NcPolynomial> {
    let field = rs.field();
    let products: Vec<NcPolynomial> = basis
        .iter()
        .map(|m| normal_form(&NcPolynomial::monomial(field, m.clone()).mul(a), rs))
        .collect();
    let mut rows: Vec<&Monomial> = products.iter().flat_map(|p| p.terms().keys()).collect();
    let one = Monomial::one();
    rows.push(&one);
    rows.sort();
    rows.dedup();
    let mut entries = Vec::with_capacity(rows.len() * basis.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for m in &rows {
        entries.extend(products.iter().map(|p| p.coefficient(m)));
        rhs.push(if m.degree() == 0 { field.one() } else { field.zero() });
    }
    let system = Matrix::new(field, rows.len(), basis.len(), entries).ok()?;
    let rhs = Matrix::new(field, rows.len(), 1, rhs).ok()?;
    let x = system.solve(&rhs).ok()??;
    let mut b = NcPolynomial::zero(field);
    for (m, c) in basis.iter().zip(x.column(0)) {
        b.add_term(m.clone(), c);
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::super::{leavitt_system, pbw_system, LieData};
    use super::*;
    use crate::exactmath::{vector, Field};

    #[test]
    fn sl2_has_only_scalar_units_in_small_span() {
        let q = Field::Rational;
        let rs = pbw_system(&LieData::sl2(q));
        let coeffs = vector::from_i64(q, &[-1, 0, 1]);
        let r = scalar_unit_search(&rs, 1, &coeffs, 1 << 20).unwrap();
        assert_eq!(r.basis_size, 4);
        assert_eq!(r.solutions.len(), 2);
        assert!(r.only_scalars());
        let coeffs = vector::from_i64(q, &[0, 1]);
        let r = scalar_unit_search(&rs, 2, &coeffs, 1 << 20).unwrap();
        assert_eq!(r.basis_size, 10);
        assert!(r.only_scalars());
    }

    #[test]
    fn leavitt_has_one_sided_units() {
        let q = Field::Rational;
        let rs = leavitt_system(2, q).unwrap();
        let coeffs = vector::from_i64(q, &[0, 1]);
        let r = scalar_unit_search(&rs, 1, &coeffs, 1 << 20).unwrap();
        assert!(!r.only_scalars());
        let x1 = rs.parse("x1").unwrap();
        let hit = r.nonscalar.iter().find(|s| s.a == x1).expect("x1 has a left inverse");
        assert_eq!(normal_form(&hit.b.mul(&hit.a), &rs), NcPolynomial::one(q));
    }

    #[test]
    fn degree_zero_finds_scalars_only() {
        let f = Field::prime(3).unwrap();
        let rs = pbw_system(&LieData::sl2(f));
        let r = scalar_unit_search(&rs, 0, &f.elements().unwrap(), 100).unwrap();
        assert_eq!(r.solutions.len(), 2);
        assert!(r.only_scalars());
        assert!(matches!(
            scalar_unit_search(&rs, 3, &f.elements().unwrap(), 100),
            Err(RewriteError::BudgetExceeded { .. })
        ));
    }
}

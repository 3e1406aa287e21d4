use crate::exactmath::{Field, Matrix, Scalar};

use super::{confluence_check, normal_form, Monomial, NcPolynomial, RewriteError, RewriteSystem, Rule};

/// `L(1, n)`: generators `x1..xn, y1..yn`, rules `yᵢxⱼ → δᵢⱼ` and `xₙyₙ → 1 − Σ_{i<n} xᵢyᵢ`.
pub fn leavitt_system(n: usize, field: Field) -> Result<RewriteSystem, RewriteError> {
    if n < 2 {
        return Err(RewriteError::LeavittRank(n));
    }
    let x = |i: usize| i as u32;
    let y = |i: usize| (n + i) as u32;
    let mut generators: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    generators.extend((1..=n).map(|i| format!("y{i}")));
    let mut rules = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rhs = if i == j {
                NcPolynomial::one(field)
            } else {
                NcPolynomial::zero(field)
            };
            rules.push(Rule {
                lhs: vec![y(i), x(j)],
                rhs,
            });
        }
    }
    let mut rhs = NcPolynomial::one(field);
    for i in 0..n - 1 {
        rhs.add_term(Monomial(vec![x(i), y(i)]), -&field.one());
    }
    rules.push(Rule {
        lhs: vec![x(n - 1), y(n - 1)],
        rhs,
    });
    RewriteSystem::new(field, generators, rules)
}

/// The row `(x1, …, xn)` and column `(y1, …, yn)` of a Leavitt system.
pub fn leavitt_pair(rs: &RewriteSystem) -> (Vec<NcPolynomial>, Vec<NcPolynomial>) {
    let n = rs.generators().len() / 2;
    let f = rs.field();
    let a = (0..n).map(|i| NcPolynomial::generator(f, i as u32)).collect();
    let b = (0..n).map(|i| NcPolynomial::generator(f, (n + i) as u32)).collect();
    (a, b)
}

/// `w(r) = Σ aᵢ r bᵢ`, unreduced.
pub fn apply_word(a: &[NcPolynomial], b: &[NcPolynomial], r: &NcPolynomial) -> NcPolynomial {
    let mut out = NcPolynomial::zero(r.field());
    for (ai, bi) in a.iter().zip(b) {
        out = out.add(&ai.mul(r).mul(bi));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpEndoCheck {
    pub unit_ok: bool,
    pub multiplicative_ok: bool,
    /// Normal forms decide equality only for confluent systems.
    pub confluent: bool,
    pub unit_residue: NcPolynomial,
    pub multiplicative_residue: NcPolynomial,
}

impl FpEndoCheck {
    pub fn passed(&self) -> bool {
        self.unit_ok && self.multiplicative_ok
    }
}

/// Checks `Σ aᵢbᵢ = 1` and `w(z₀z₁) = w(z₀)w(z₁)` with `z₀, z₁` free over the presented algebra.
/// Additivity needs no check: `w` is linear by construction.
pub fn check_endo_fp(a: &[NcPolynomial], b: &[NcPolynomial], rs: &RewriteSystem) -> Result<FpEndoCheck, RewriteError> {
    if a.len() != b.len() {
        return Err(RewriteError::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    let field = rs.field();
    let unit_residue = normal_form(&apply_word(a, b, &NcPolynomial::one(field)).sub(&NcPolynomial::one(field)), rs);
    let ext = rs.with_free_generators(&["z0", "z1"]);
    let z0 = NcPolynomial::generator(field, rs.generators().len() as u32);
    let z1 = NcPolynomial::generator(field, rs.generators().len() as u32 + 1);
    let lhs = apply_word(a, b, &z0.mul(&z1));
    let rhs = apply_word(a, b, &z0).mul(&apply_word(a, b, &z1));
    let multiplicative_residue = normal_form(&lhs.sub(&rhs), &ext);
    Ok(FpEndoCheck {
        unit_ok: unit_residue.is_zero(),
        multiplicative_ok: multiplicative_residue.is_zero(),
        confluent: confluence_check(rs).confluent(),
        unit_residue,
        multiplicative_residue,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleWitness {
    pub sample: NcPolynomial,
    /// `bⱼ w(r) aⱼ = r` for every `j`.
    pub left_inverse: bool,
    /// `aᵢbⱼ` commutes with `w(r)` for every `i, j`.
    pub centralizing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpWitnessReport {
    pub samples: Vec<SampleWitness>,
    /// Rank of the `n²` elements `aᵢbⱼ` after reduction.
    pub matrix_unit_rank: usize,
    pub n: usize,
}

impl FpWitnessReport {
    pub fn passed(&self) -> bool {
        self.matrix_unit_rank == self.n * self.n && self.samples.iter().all(|s| s.left_inverse && s.centralizing)
    }
}

pub fn fp_witness_checks(
    a: &[NcPolynomial],
    b: &[NcPolynomial],
    rs: &RewriteSystem,
    samples: &[NcPolynomial],
) -> Result<FpWitnessReport, RewriteError> {
    if a.len() != b.len() {
        return Err(RewriteError::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    let n = a.len();
    let units: Vec<NcPolynomial> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| normal_form(&a[i].mul(&b[j]), rs))
        .collect();
    let mut out = Vec::with_capacity(samples.len());
    for r in samples {
        let w = normal_form(&apply_word(a, b, r), rs);
        let left_inverse = (0..n).all(|j| normal_form(&b[j].mul(&w).mul(&a[j]).sub(r), rs).is_zero());
        let centralizing = units.iter().all(|u| normal_form(&u.commutator(&w), rs).is_zero());
        out.push(SampleWitness {
            sample: r.clone(),
            left_inverse,
            centralizing,
        });
    }
    Ok(FpWitnessReport {
        samples: out,
        matrix_unit_rank: polynomial_rank(&units, rs.field()),
        n,
    })
}

/// Rank of a list of polynomials as vectors over their monomials.
pub fn polynomial_rank(polys: &[NcPolynomial], field: Field) -> usize {
    let mut monomials: Vec<&Monomial> = polys.iter().flat_map(|p| p.terms().keys()).collect();
    monomials.sort();
    monomials.dedup();
    if polys.is_empty() || monomials.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| monomials.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    Matrix::from_rows(field, rows).expect("rectangular").rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leavitt_rule_counts_and_confluence() {
        let q = Field::Rational;
        let l2 = leavitt_system(2, q).unwrap();
        assert_eq!(l2.rules().len(), 5);
        assert!(confluence_check(&l2).confluent());
        let l3 = leavitt_system(3, q).unwrap();
        assert_eq!(l3.rules().len(), 10);
        assert!(confluence_check(&l3).confluent());
        assert_eq!(leavitt_system(1, q).unwrap_err(), RewriteError::LeavittRank(1));
    }

    #[test]
    fn leavitt_normal_forms() {
        let q = Field::Rational;
        let rs = leavitt_system(2, q).unwrap();
        assert_eq!(normal_form(&rs.parse("y1*x1").unwrap(), &rs), NcPolynomial::one(q));
        assert_eq!(
            normal_form(&rs.parse("x2*y2").unwrap(), &rs),
            rs.parse("1 - x1*y1").unwrap()
        );
    }

    #[test]
    fn leavitt_row_and_column_are_inverse() {
        let q = Field::Rational;
        let rs = leavitt_system(2, q).unwrap();
        let (a, b) = leavitt_pair(&rs);
        let ab = normal_form(&a[0].mul(&b[0]).add(&a[1].mul(&b[1])), &rs);
        assert_eq!(ab, NcPolynomial::one(q));
        for (j, bj) in b.iter().enumerate() {
            for (k, ak) in a.iter().enumerate() {
                let expected = if j == k { NcPolynomial::one(q) } else { NcPolynomial::zero(q) };
                assert_eq!(normal_form(&bj.mul(ak), &rs), expected);
            }
        }
    }

    #[test]
    fn check_endo_fp_examples() {
        let q = Field::Rational;
        let rs = leavitt_system(2, q).unwrap();
        let (a, b) = leavitt_pair(&rs);
        assert!(check_endo_fp(&a, &b, &rs).unwrap().passed());
        let one = [NcPolynomial::one(q)];
        assert!(check_endo_fp(&one, &one, &rs).unwrap().passed());
        let c = check_endo_fp(&a[..1], &b[..1], &rs).unwrap();
        assert!(!c.unit_ok);
        assert_eq!(c.unit_residue, rs.parse("x1*y1 - 1").unwrap());
        assert!(matches!(
            check_endo_fp(&a, &b[..1], &rs),
            Err(RewriteError::LengthMismatch { a: 2, b: 1 })
        ));
    }

    #[test]
    fn witness_examples() {
        let q = Field::Rational;
        let rs = leavitt_system(2, q).unwrap();
        let (a, b) = leavitt_pair(&rs);
        let samples: Vec<NcPolynomial> = ["x1", "1", "x1*y2", "y1 + 2*x2", "x2*x1*y1"]
            .iter()
            .map(|s| rs.parse(s).unwrap())
            .collect();
        let report = fp_witness_checks(&a, &b, &rs, &samples).unwrap();
        assert_eq!(report.matrix_unit_rank, 4);
        assert!(report.passed());
    }
}

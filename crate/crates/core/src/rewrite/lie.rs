use rand::Rng;

use crate::exactmath::{vector, Field, Matrix, Scalar};

use super::{normal_form, Monomial, NcPolynomial, RewriteError, RewriteSystem, Rule};

/// A Lie algebra by brackets `[e_i, e_j] = brackets[i * dim + j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    dim: usize,
    field: Field,
    brackets: Vec<Vec<Scalar>>,
    names: Vec<String>,
}

impl LieData {
    /// Rejects tables that are not alternating; Jacobi is checked separately.
    pub fn new(field: Field, dim: usize, brackets: Vec<Vec<Scalar>>, names: Option<Vec<String>>) -> Result<LieData, RewriteError> {
        if brackets.len() != dim * dim || brackets.iter().any(|v| v.len() != dim) {
            return Err(RewriteError::Shape);
        }
        if brackets.iter().flatten().any(|x| x.field() != field) {
            return Err(RewriteError::FieldMismatch);
        }
        for i in 0..dim {
            for j in 0..dim {
                let sum = vector::add(&brackets[i * dim + j], &brackets[j * dim + i]);
                if !vector::is_zero(&sum) || (i == j && !vector::is_zero(&brackets[i * dim + i])) {
                    return Err(RewriteError::AntisymmetryViolation { i, j });
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..dim).map(|i| format!("e{}", i + 1)).collect());
        if names.len() != dim {
            return Err(RewriteError::Shape);
        }
        Ok(LieData {
            dim,
            field,
            brackets,
            names,
        })
    }

    /// From the brackets `[e_i, e_j]` for `i < j`.
    pub fn from_upper<F>(field: Field, dim: usize, names: Option<Vec<String>>, mut upper: F) -> LieData
    where
        F: FnMut(usize, usize) -> Vec<Scalar>,
    {
        let mut brackets = vec![vector::zeros(field, dim); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = upper(i, j);
                brackets[j * dim + i] = vector::neg(&v);
                brackets[i * dim + j] = v;
            }
        }
        LieData::new(field, dim, brackets, names).expect("alternating by construction")
    }

    /// `sl₂` on `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2(field: Field) -> LieData {
        let names = ["e", "f", "h"].iter().map(|s| s.to_string()).collect();
        LieData::from_upper(field, 3, Some(names), |i, j| match (i, j) {
            (0, 1) => vector::from_i64(field, &[0, 0, 1]),
            (0, 2) => vector::from_i64(field, &[-2, 0, 0]),
            (1, 2) => vector::from_i64(field, &[0, 2, 0]),
            _ => unreachable!(),
        })
    }

    /// The Heisenberg algebra on `x, y, z` with `[x,y] = z` central.
    pub fn heisenberg(field: Field) -> LieData {
        let names = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        LieData::from_upper(field, 3, Some(names), |i, j| {
            if (i, j) == (0, 1) {
                vector::from_i64(field, &[0, 0, 1])
            } else {
                vector::zeros(field, 3)
            }
        })
    }

    pub fn abelian(field: Field, dim: usize) -> LieData {
        LieData::from_upper(field, dim, None, |_, _| vector::zeros(field, dim))
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

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i * self.dim + j]
    }

    pub fn structure(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_bracket(i, j).to_vec()).collect())
            .collect()
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    vector::axpy(&mut out, &(x * y), self.basis_bracket(i, j));
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, i)
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let s1 = self.bracket(&a, &self.bracket(&b, &c));
                    let s2 = self.bracket(&b, &self.bracket(&c, &a));
                    let s3 = self.bracket(&c, &self.bracket(&a, &b));
                    if !vector::is_zero(&vector::add(&vector::add(&s1, &s2), &s3)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_holds(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieData, RewriteError> {
        let p_inv = p.inverse().ok_or(RewriteError::Shape)?;
        let cols = p.columns();
        let mut brackets = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.bracket(&cols[i], &cols[j]);
                brackets.push(p_inv.mul_vec(&v).map_err(|_| RewriteError::Shape)?);
            }
        }
        LieData::new(self.field, self.dim, brackets, Some(self.names.clone()))
    }

    /// Uniformly random alternating table.
    pub fn random_alternating<R: Rng>(field: Field, dim: usize, rng: &mut R) -> LieData {
        let p = field.order().expect("random tables need a finite field");
        LieData::from_upper(field, dim, None, |_, _| {
            (0..dim).map(|_| field.from_i64(rng.random_range(0..p) as i64)).collect()
        })
    }

    pub fn as_polynomial(&self, v: &[Scalar]) -> NcPolynomial {
        NcPolynomial::linear(v, self.field)
    }
}

/// Straightening rules `e_j e_i → e_i e_j + [e_j, e_i]` for `j > i`.
pub fn pbw_system(l: &LieData) -> RewriteSystem {
    let field = l.field();
    let mut rules = Vec::new();
    for j in 0..l.dim() {
        for i in 0..j {
            let mut rhs = NcPolynomial::monomial(field, Monomial(vec![i as u32, j as u32]));
            rhs = rhs.add(&l.as_polynomial(l.basis_bracket(j, i)));
            rules.push(Rule {
                lhs: vec![j as u32, i as u32],
                rhs,
            });
        }
    }
    RewriteSystem::new(field, l.names().to_vec(), rules).expect("straightening rules decrease deglex")
}

/// The algebra map `E(L) → K` killing every generator.
pub fn augmentation(p: &NcPolynomial) -> Scalar {
    p.constant_term()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdPowerReport {
    pub p: u64,
    /// `ad_a^p(u)` by iterated brackets in `L`.
    pub iterated: Vec<Scalar>,
    /// Normal form of `aᵖu − uaᵖ` in `E(L)`.
    pub enveloping: NcPolynomial,
    pub equal: bool,
    /// Whether the enveloping commutator has pure degree 1.
    pub in_lie_algebra: bool,
    /// `[aᵖ, ·]` satisfies Leibniz on all basis pairs.
    pub leibniz: bool,
}

impl AdPowerReport {
    pub fn passed(&self) -> bool {
        self.equal && self.in_lie_algebra && self.leibniz
    }
}

fn power(a: &NcPolynomial, k: u64, rs: &RewriteSystem) -> NcPolynomial {
    let mut out = NcPolynomial::one(a.field());
    for _ in 0..k {
        out = normal_form(&out.mul(a), rs);
    }
    out
}

/// Compares `ad_a^p(u)` with `[aᵖ, u]` computed in the enveloping algebra, `p` the characteristic.
pub fn ad_power_check(l: &LieData, a: &[Scalar], probe: &[Scalar]) -> Result<AdPowerReport, RewriteError> {
    let p = l.field().characteristic();
    if p == 0 {
        return Err(RewriteError::CharacteristicZero);
    }
    if a.len() != l.dim() || probe.len() != l.dim() {
        return Err(RewriteError::Shape);
    }
    let rs = pbw_system(l);
    let mut iterated = probe.to_vec();
    for _ in 0..p {
        iterated = l.bracket(a, &iterated);
    }
    let ap = power(&l.as_polynomial(a), p, &rs);
    let d = |v: &[Scalar]| normal_form(&ap.commutator(&l.as_polynomial(v)), &rs);
    let enveloping = d(probe);
    let equal = enveloping == l.as_polynomial(&iterated);
    let in_lie_algebra = enveloping.is_homogeneous_of_degree(1);
    let images: Vec<NcPolynomial> = (0..l.dim()).map(|i| d(&l.basis(i))).collect();
    let leibniz = images.iter().all(|x| x.is_homogeneous_of_degree(1)) && {
        let img: Vec<Vec<Scalar>> = images.iter().map(|x| x.linear_part(l.dim())).collect();
        (0..l.dim()).all(|r| {
            (0..l.dim()).all(|s| {
                let lhs = d(l.basis_bracket(r, s)).linear_part(l.dim());
                let rhs = vector::add(&l.bracket(&img[r], &l.basis(s)), &l.bracket(&l.basis(r), &img[s]));
                lhs == rhs
            })
        })
    };
    Ok(AdPowerReport {
        p,
        iterated,
        enveloping,
        equal,
        in_lie_algebra,
        leibniz,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerivationReport {
    /// Normal forms of `[b, e_i]`.
    pub commutators: Vec<NcPolynomial>,
    pub passed: bool,
}

/// Whether commutator with `b ∈ E(L)` maps every basis vector of `L` back into `L`.
pub fn lie_inner_derivation_check(l: &LieData, b: &NcPolynomial) -> Result<LieDerivationReport, RewriteError> {
    if !augmentation(b).is_zero() {
        return Err(RewriteError::NonzeroAugmentation);
    }
    let rs = pbw_system(l);
    let commutators: Vec<NcPolynomial> = (0..l.dim())
        .map(|i| normal_form(&b.commutator(&NcPolynomial::generator(l.field(), i as u32)), &rs))
        .collect();
    let passed = commutators.iter().all(|c| c.is_homogeneous_of_degree(1));
    Ok(LieDerivationReport { commutators, passed })
}

#[cfg(test)]
mod tests {
    use super::super::confluence_check;
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn sl2_is_lie_and_confluent() {
        for f in [Field::Rational, gf(3), gf(5)] {
            let l = LieData::sl2(f);
            assert!(l.jacobi_holds());
            let rs = pbw_system(&l);
            assert_eq!(rs.rules().len(), 3);
            assert!(confluence_check(&rs).confluent());
        }
    }

    #[test]
    fn sl2_normal_forms() {
        let q = Field::Rational;
        let rs = pbw_system(&LieData::sl2(q));
        assert_eq!(normal_form(&rs.parse("f*e").unwrap(), &rs), rs.parse("e*f - h").unwrap());
        assert_eq!(normal_form(&rs.parse("f*e*h").unwrap(), &rs), rs.parse("e*f*h - h^2").unwrap());
    }

    #[test]
    fn abelian_normal_forms_are_sorted() {
        let q = Field::Rational;
        let l = LieData::abelian(q, 3);
        let rs = pbw_system(&l);
        let p = rs.parse("e3*e1*e2 - e2*e3*e1").unwrap();
        assert!(normal_form(&p, &rs).is_zero());
    }

    #[test]
    fn broken_jacobi_is_not_confluent() {
        let q = Field::Rational;
        let s = LieData::sl2(q);
        let mut table = s.structure();
        // [h, e] = 3e instead of 2e
        table[2][0] = vector::from_i64(q, &[3, 0, 0]);
        table[0][2] = vector::from_i64(q, &[-3, 0, 0]);
        let flat = table.into_iter().flatten().collect();
        let broken = LieData::new(q, 3, flat, Some(s.names().to_vec())).unwrap();
        assert!(!broken.jacobi_holds());
        let report = confluence_check(&pbw_system(&broken));
        assert!(!report.confluent());
        assert_eq!(report.failures[0].word, Monomial(vec![2, 1, 0]));
    }

    #[test]
    fn antisymmetry_enforced() {
        let q = Field::Rational;
        let mut b = LieData::sl2(q).structure().into_iter().flatten().collect::<Vec<_>>();
        b[1] = vector::from_i64(q, &[1, 0, 0]);
        assert!(matches!(
            LieData::new(q, 3, b, None),
            Err(RewriteError::AntisymmetryViolation { .. })
        ));
    }

    #[test]
    fn ad_power_examples() {
        let f = gf(3);
        let l = LieData::sl2(f);
        let (e, fv, h) = (l.basis(0), l.basis(1), l.basis(2));
        let r = ad_power_check(&l, &h, &e).unwrap();
        assert_eq!(r.iterated, vector::from_i64(f, &[2, 0, 0]));
        assert!(r.passed());
        let r = ad_power_check(&l, &e, &fv).unwrap();
        assert!(vector::is_zero(&r.iterated));
        assert!(r.enveloping.is_zero());
        assert!(r.passed());
        let ab = LieData::abelian(f, 2);
        let r = ad_power_check(&ab, &ab.basis(0), &ab.basis(1)).unwrap();
        assert!(r.enveloping.is_zero() && r.passed());
        assert_eq!(
            ad_power_check(&LieData::sl2(Field::Rational), &h, &e),
            Err(RewriteError::CharacteristicZero)
        );
    }

    #[test]
    fn lie_derivation_examples() {
        let f = gf(3);
        let l = LieData::sl2(f);
        let rs = pbw_system(&l);
        assert!(lie_inner_derivation_check(&l, &rs.parse("h").unwrap()).unwrap().passed);
        let h3 = lie_inner_derivation_check(&l, &rs.parse("h^3").unwrap()).unwrap();
        assert!(h3.passed);
        assert_eq!(h3.commutators[0], rs.parse("2*e").unwrap());

        let q = Field::Rational;
        let lq = LieData::sl2(q);
        let rq = pbw_system(&lq);
        let ef = lie_inner_derivation_check(&lq, &rq.parse("e*f").unwrap()).unwrap();
        assert!(!ef.passed);
        assert_eq!(ef.commutators[0], rq.parse("-e*h").unwrap());
        assert_eq!(
            lie_inner_derivation_check(&lq, &rq.parse("1 + h").unwrap()),
            Err(RewriteError::NonzeroAugmentation)
        );
    }

    #[test]
    fn augmentation_is_multiplicative_on_samples() {
        let q = Field::Rational;
        let rs = pbw_system(&LieData::sl2(q));
        let samples = ["2 + e*f", "h - 3", "f*e + 1/2", "e*h*f - 5"];
        for s in samples {
            for t in samples {
                let (p, r) = (rs.parse(s).unwrap(), rs.parse(t).unwrap());
                let prod = normal_form(&p.mul(&r), &rs);
                assert_eq!(augmentation(&prod), &augmentation(&p) * &augmentation(&r));
            }
        }
    }
}

use rayon::prelude::*;

use crate::exactmath::{vector, Matrix, Scalar};

use super::{AlgebraHom, StructAlgebra, TensorElement, TensorError};

/// `w = Σ aᵢ ⊗ bᵢ` with both lists linearly independent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinimalPair {
    pub a: Vec<Vec<Scalar>>,
    pub b: Vec<Vec<Scalar>>,
}

impl MinimalPair {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn to_tensor(&self, r: &StructAlgebra) -> Result<TensorElement, TensorError> {
        let pairs: Vec<_> = self.a.iter().cloned().zip(self.b.iter().cloned()).collect();
        TensorElement::from_pairs(r.field(), r.dim(), &pairs)
    }
}

/// Rank factorisation of the coefficient matrix: `a` are its pivot columns, `b` the nonzero
/// rows of its reduced row echelon form.
pub fn minimal_pair(w: &TensorElement, r: &StructAlgebra) -> Result<MinimalPair, TensorError> {
    check_tensor(w, r, 2)?;
    let m = w.coefficient_matrix();
    let red = m.rref_rank_kernel();
    let a = red.pivots.iter().map(|&c| m.column(c)).collect();
    let b = (0..red.rank).map(|i| red.rref.row(i).to_vec()).collect();
    Ok(MinimalPair { a, b })
}

pub(crate) fn check_tensor(w: &TensorElement, r: &StructAlgebra, degree: usize) -> Result<(), TensorError> {
    if w.field() != r.field() {
        return Err(TensorError::FieldMismatch);
    }
    if w.dim() != r.dim() || w.degree() != degree {
        return Err(TensorError::Shape {
            expected: r.dim(),
            found: w.dim(),
        });
    }
    Ok(())
}

/// A candidate `w(x) = Σ aᵢ x bᵢ` for an extended inner endomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EndoCandidate {
    pub w: TensorElement,
    pub pair: MinimalPair,
}

impl EndoCandidate {
    pub fn from_tensor(w: TensorElement, r: &StructAlgebra) -> Result<EndoCandidate, TensorError> {
        let pair = minimal_pair(&w, r)?;
        Ok(EndoCandidate { w, pair })
    }

    pub fn from_pairs(pairs: &[(Vec<Scalar>, Vec<Scalar>)], r: &StructAlgebra) -> Result<EndoCandidate, TensorError> {
        EndoCandidate::from_tensor(TensorElement::from_pairs(r.field(), r.dim(), pairs)?, r)
    }

    /// `1 ⊗ 1`
    pub fn identity(r: &StructAlgebra) -> EndoCandidate {
        EndoCandidate::from_tensor(TensorElement::unit_square(r).expect("dimension within cap"), r)
            .expect("shapes agree")
    }

    /// `u ⊗ u⁻¹`
    pub fn conjugation(u: &[Scalar], r: &StructAlgebra) -> Result<EndoCandidate, TensorError> {
        let v = r.inverse(u).ok_or(TensorError::NotInvertible)?;
        EndoCandidate::from_pairs(&[(u.to_vec(), v)], r)
    }

    /// `Σ aᵢ x bᵢ` in `r`.
    pub fn apply(&self, r: &StructAlgebra, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = r.zero();
        for (a, b) in self.pair.a.iter().zip(&self.pair.b) {
            let t = r.mul(&r.mul(a, x), b);
            out = vector::add(&out, &t);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoFailure {
    /// `Σ aᵢ bᵢ ≠ 1`
    UnitCondition,
    /// `Σ aᵢ⊗1⊗bᵢ ≠ Σ aⱼ⊗bⱼaₖ⊗bₖ`
    Multiplicativity,
}

impl std::fmt::Display for EndoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EndoFailure::UnitCondition => write!(f, "unit condition"),
            EndoFailure::Multiplicativity => write!(f, "multiplicativity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoCheck {
    pub unit_ok: bool,
    /// The degree-3 identity in `R⊗R⊗R`.
    pub generic_ok: bool,
    /// `bⱼaₖ = δⱼₖ` on the minimal pair.
    pub biorthogonal_ok: bool,
    pub failure: Option<EndoFailure>,
}

impl EndoCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn unit_condition(w: &TensorElement, r: &StructAlgebra) -> bool {
    let mut sum = r.zero();
    for (idx, c) in w.terms() {
        vector::axpy(&mut sum, &c, r.basis_product(idx[0], idx[1]));
    }
    sum == r.one()
}

fn generic_condition(w: &TensorElement, r: &StructAlgebra) -> Result<bool, TensorError> {
    let d = r.dim();
    let mut lhs = TensorElement::zeros(r.field(), d, 3)?;
    let mut rhs = lhs.clone();
    let terms = w.terms();
    for (idx, c) in &terms {
        lhs.add_at(&[idx[0], 0, idx[1]], c);
    }
    for (ij, c) in &terms {
        for (kl, e) in &terms {
            let ce = c * e;
            for (m, x) in r.basis_product(ij[1], kl[0]).iter().enumerate() {
                if !x.is_zero() {
                    rhs.add_at(&[ij[0], m, kl[1]], &(&ce * x));
                }
            }
        }
    }
    Ok(lhs == rhs)
}

fn biorthogonal(pair: &MinimalPair, r: &StructAlgebra) -> bool {
    pair.b.iter().enumerate().all(|(j, b)| {
        pair.a.iter().enumerate().all(|(k, a)| {
            let prod = r.mul(b, a);
            if j == k {
                prod == r.one()
            } else {
                vector::is_zero(&prod)
            }
        })
    })
}

/// Checks the unit and multiplicativity conditions, the latter both in `R⊗R⊗R` and through
/// biorthogonality of the minimal pair.
pub fn check_endo_conditions(c: &EndoCandidate, r: &StructAlgebra) -> Result<EndoCheck, TensorError> {
    check_tensor(&c.w, r, 2)?;
    let unit_ok = unit_condition(&c.w, r);
    let generic_ok = generic_condition(&c.w, r)?;
    let biorthogonal_ok = biorthogonal(&c.pair, r);
    if generic_ok != biorthogonal_ok {
        return Err(TensorError::InconsistentRoutes);
    }
    let failure = if !unit_ok {
        Some(EndoFailure::UnitCondition)
    } else if !generic_ok {
        Some(EndoFailure::Multiplicativity)
    } else {
        None
    };
    Ok(EndoCheck {
        unit_ok,
        generic_ok,
        biorthogonal_ok,
        failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraInnerClass {
    ConjugationByUnit { u: Vec<Scalar>, u_inv: Vec<Scalar> },
    NotInner(Option<EndoFailure>),
}

pub fn classify_inner_endo_algebra(c: &EndoCandidate, r: &StructAlgebra) -> Result<AlgebraInnerClass, TensorError> {
    let check = check_endo_conditions(c, r)?;
    if let Some(f) = check.failure {
        return Ok(AlgebraInnerClass::NotInner(Some(f)));
    }
    let n = c.pair.n();
    if n != 1 {
        return Err(TensorError::RankContradiction(n));
    }
    let (u, v) = (c.pair.a[0].clone(), c.pair.b[0].clone());
    if r.mul(&u, &v) != r.one() || r.mul(&v, &u) != r.one() {
        return Err(TensorError::RankContradiction(n));
    }
    Ok(AlgebraInnerClass::ConjugationByUnit { u, u_inv: v })
}

/// Whether `a′ = aU` and `b′ = U⁻¹b` for some `U ∈ GL(n, K)`.
pub fn pairs_equivalent(p1: &MinimalPair, p2: &MinimalPair, r: &StructAlgebra) -> bool {
    let n = p1.n();
    if n != p2.n() || p1.b.len() != n || p2.b.len() != n {
        return false;
    }
    if n == 0 {
        return true;
    }
    let field = r.field();
    let (Ok(a), Ok(a2)) = (
        Matrix::from_columns(field, r.dim(), &p1.a),
        Matrix::from_columns(field, r.dim(), &p2.a),
    ) else {
        return false;
    };
    let Ok(Some(u)) = a.solve(&a2) else {
        return false;
    };
    if a.mul(&u).ok().as_ref() != Some(&a2) {
        return false;
    }
    let Some(u_inv) = u.inverse() else {
        return false;
    };
    let (Ok(b), Ok(b2)) = (
        Matrix::from_rows(field, p1.b.clone()),
        Matrix::from_rows(field, p2.b.clone()),
    ) else {
        return false;
    };
    u_inv.mul(&b).ok().as_ref() == Some(&b2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedEndomorphism {
    /// Matrix of `s ↦ Σ f(aᵢ) s f(bᵢ)` on the target of `f`.
    pub matrix: Matrix,
    pub is_hom: bool,
    pub is_injective: bool,
}

impl InducedEndomorphism {
    pub fn apply(&self, s: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(s).expect("square")
    }
}

/// The value of the extended system at the object `f: R → S`.
pub fn induced_endomorphism(c: &EndoCandidate, f: &AlgebraHom<'_>) -> Result<InducedEndomorphism, TensorError> {
    let matrix = induced_matrix(c, f)?;
    let s = f.target();
    let images = matrix.columns();
    let is_hom = matrix.mul_vec(&s.one())? == s.one()
        && (0..s.dim()).all(|i| {
            (0..s.dim()).all(|j| matrix.mul_vec(s.basis_product(i, j)).expect("square") == s.mul(&images[i], &images[j]))
        });
    let check = check_endo_conditions(c, f.source())?;
    if check.passed() && !is_hom {
        return Err(TensorError::HomomorphismViolation);
    }
    let is_injective = matrix.rank() == s.dim();
    if check.passed() && !is_injective {
        return Err(TensorError::InjectivityViolation);
    }
    Ok(InducedEndomorphism {
        matrix,
        is_hom,
        is_injective,
    })
}

/// Matrix of `s ↦ Σ f(aᵢ) s f(bᵢ)` without any verdicts.
pub fn induced_matrix(c: &EndoCandidate, f: &AlgebraHom<'_>) -> Result<Matrix, TensorError> {
    check_tensor(&c.w, f.source(), 2)?;
    let s = f.target();
    let fa: Vec<_> = c.pair.a.iter().map(|a| f.apply(a)).collect();
    let fb: Vec<_> = c.pair.b.iter().map(|b| f.apply(b)).collect();
    let cols: Vec<Vec<Scalar>> = (0..s.dim())
        .map(|x| {
            let mut out = s.zero();
            for (a, b) in fa.iter().zip(&fb) {
                out = vector::add(&out, &s.mul(&s.mul_basis_right(a, x), b));
            }
            out
        })
        .collect();
    Ok(Matrix::from_columns(s.field(), s.dim(), &cols)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationRoute {
    /// Every element of `R⊗R` was checked; the unit route was run as a cross-check.
    BruteForce,
    /// Only `u ⊗ u⁻¹` for units `u` was formed.
    Units,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerEndoEnumeration {
    pub count: usize,
    /// Passing candidates in lexicographic coordinate order.
    pub candidates: Vec<EndoCandidate>,
    pub unit_count: usize,
    /// `count == |U(R)| / |U(K)|`
    pub group_order_check: bool,
    pub route: EnumerationRoute,
    /// Whether the brute-force and unit routes found the same set.
    pub routes_agree: Option<bool>,
    pub scanned: u64,
}

pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// All extended inner endomorphisms of a finite algebra.
pub fn enumerate_inner_endos(r: &StructAlgebra, budget: u64) -> Result<InnerEndoEnumeration, TensorError> {
    let field = r.field();
    let p = field.order().ok_or(TensorError::InfiniteField)?;
    let d = r.dim() as u32;
    let unit_space = p.checked_pow(d);
    let tensor_space = p.checked_pow(d * d);
    let within = |n: Option<u64>| n.is_some_and(|n| n <= budget);
    if !within(unit_space) {
        return Err(TensorError::BudgetExceeded {
            needed: unit_space,
            budget,
        });
    }
    let units = r.units().expect("finite field");
    let mut by_units: Vec<EndoCandidate> = units
        .iter()
        .map(|(u, _)| EndoCandidate::conjugation(u, r))
        .collect::<Result<_, _>>()?;
    by_units.sort_by(|x, y| x.w.cmp(&y.w));
    by_units.dedup_by(|x, y| x.w == y.w);
    let expected = units.len() / (p as usize - 1);

    let (candidates, route, routes_agree, scanned) = if within(tensor_space) {
        let total = tensor_space.expect("within budget");
        let values = field.elements().expect("finite field");
        let len = (d * d) as usize;
        let found: Vec<EndoCandidate> = (0..total)
            .into_par_iter()
            .map(|idx| -> Result<Option<EndoCandidate>, TensorError> {
                let mut coords = vec![field.zero(); len];
                let mut rest = idx;
                for slot in coords.iter_mut().rev() {
                    *slot = values[(rest % p) as usize].clone();
                    rest /= p;
                }
                let w = TensorElement::from_coords(field, r.dim(), 2, coords)?;
                let c = EndoCandidate::from_tensor(w, r)?;
                Ok(check_endo_conditions(&c, r)?.passed().then_some(c))
            })
            .filter_map(|res| res.transpose())
            .collect::<Result<_, _>>()?;
        let agree = found.len() == by_units.len() && found.iter().zip(&by_units).all(|(x, y)| x.w == y.w);
        (found, EnumerationRoute::BruteForce, Some(agree), total)
    } else {
        let n = units.len() as u64;
        (by_units.clone(), EnumerationRoute::Units, None, n)
    };
    Ok(InnerEndoEnumeration {
        count: candidates.len(),
        group_order_check: candidates.len() == expected,
        candidates,
        unit_count: units.len(),
        route,
        routes_agree,
        scanned,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub basis: Vec<Vec<Scalar>>,
    pub dim: usize,
    pub center_dim: usize,
    pub n: usize,
    /// `dim == n² · dim Z(S)`
    pub matches: bool,
}

/// Centralizer in `S` of the image of `β_f`.
pub fn centralizer_of_image(c: &EndoCandidate, f: &AlgebraHom<'_>) -> Result<CentralizerReport, TensorError> {
    let beta = induced_matrix(c, f)?;
    let s = f.target();
    let basis = s.centralizer(&beta.columns());
    let center_dim = s.center().len();
    let n = c.pair.n();
    Ok(CentralizerReport {
        dim: basis.len(),
        matches: basis.len() == n * n * center_dim,
        basis,
        center_dim,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::super::matrix_unit;
    use super::*;
    use crate::exactmath::Field;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn m2(f: Field) -> StructAlgebra {
        StructAlgebra::matrix_algebra(2, f)
    }

    fn e(r: &StructAlgebra, i: usize, j: usize) -> Vec<Scalar> {
        r.coords_of_matrix(&matrix_unit(r.field(), 2, i, j)).unwrap()
    }

    #[test]
    fn minimal_pair_examples() {
        let q = Field::Rational;
        let r = m2(q);
        let p = minimal_pair(&TensorElement::unit_square(&r).unwrap(), &r).unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.a, vec![r.one()]);
        assert_eq!(p.b, vec![r.one()]);

        let (u, v) = (e(&r, 0, 1), e(&r, 1, 0));
        let w = TensorElement::from_pairs(q, 4, &[(e(&r, 0, 0), u.clone()), (e(&r, 0, 0), v.clone())]).unwrap();
        let p = minimal_pair(&w, &r).unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.to_tensor(&r).unwrap(), w);
        let expected = TensorElement::from_pairs(q, 4, &[(e(&r, 0, 0), vector::add(&u, &v))]).unwrap();
        assert_eq!(p.to_tensor(&r).unwrap(), expected);
    }

    #[test]
    fn check_examples() {
        let f = gf2();
        let r = m2(f);
        for (u, _) in r.units().unwrap() {
            let c = EndoCandidate::conjugation(&u, &r).unwrap();
            assert!(check_endo_conditions(&c, &r).unwrap().passed());
        }
        assert!(check_endo_conditions(&EndoCandidate::identity(&r), &r).unwrap().passed());
        let e11 = e(&r, 0, 0);
        let c = EndoCandidate::from_pairs(&[(e11.clone(), e11)], &r).unwrap();
        let check = check_endo_conditions(&c, &r).unwrap();
        assert_eq!(check.failure, Some(EndoFailure::UnitCondition));
    }

    #[test]
    fn classify_examples() {
        let f = gf2();
        let r = m2(f);
        let (e11, e22) = (e(&r, 0, 0), e(&r, 1, 1));
        let c = EndoCandidate::from_pairs(&[(e11.clone(), e11), (e22.clone(), e22)], &r).unwrap();
        let check = check_endo_conditions(&c, &r).unwrap();
        assert!(check.unit_ok);
        assert!(!check.biorthogonal_ok);
        assert_eq!(
            classify_inner_endo_algebra(&c, &r).unwrap(),
            AlgebraInnerClass::NotInner(Some(EndoFailure::Multiplicativity))
        );
        assert_eq!(
            classify_inner_endo_algebra(&EndoCandidate::identity(&r), &r).unwrap(),
            AlgebraInnerClass::ConjugationByUnit {
                u: r.one(),
                u_inv: r.one()
            }
        );
    }

    #[test]
    fn classified_unit_is_unique_up_to_scalar() {
        let q = Field::Rational;
        let r = m2(q);
        let u = vector::from_i64(q, &[1, 2, 0, 1]);
        let c = EndoCandidate::conjugation(&u, &r).unwrap();
        let AlgebraInnerClass::ConjugationByUnit { u: found, .. } = classify_inner_endo_algebra(&c, &r).unwrap() else {
            panic!("conjugation should classify");
        };
        let k = u.iter().position(|x| !x.is_zero()).unwrap();
        let lambda = u[k].try_div(&found[k]).unwrap();
        assert_eq!(vector::scale(&lambda, &found), u);
    }

    #[test]
    fn equivalence_examples() {
        let q = Field::Rational;
        let r = m2(q);
        let a = vec![e(&r, 0, 0), e(&r, 0, 1)];
        let b = vec![e(&r, 1, 0), e(&r, 1, 1)];
        let p1 = MinimalPair { a: a.clone(), b: b.clone() };
        // U = [[1, 1], [0, 2]], U⁻¹ = [[1, -1/2], [0, 1/2]]
        let half = q.from_ratio(1, 2).unwrap();
        let a2 = vec![a[0].clone(), vector::add(&a[0], &vector::scale(&q.from_i64(2), &a[1]))];
        let b2 = vec![vector::sub(&b[0], &vector::scale(&half, &b[1])), vector::scale(&half, &b[1])];
        let p2 = MinimalPair { a: a2, b: b2 };
        assert!(pairs_equivalent(&p1, &p2, &r));
        assert_eq!(p1.to_tensor(&r).unwrap(), p2.to_tensor(&r).unwrap());

        let l = q.from_i64(3);
        let p3 = MinimalPair {
            a: vec![vector::scale(&l, &a[0])],
            b: vec![vector::scale(&l.inv(), &b[0])],
        };
        let p4 = MinimalPair {
            a: vec![a[0].clone()],
            b: vec![b[0].clone()],
        };
        assert!(pairs_equivalent(&p3, &p4, &r));
        assert!(!pairs_equivalent(&p1, &p4, &r));
        let p5 = MinimalPair {
            a: vec![a[0].clone()],
            b: vec![b[1].clone()],
        };
        assert!(!pairs_equivalent(&p4, &p5, &r));
    }

    #[test]
    fn induced_identity_and_conjugation() {
        let f = gf2();
        let r = m2(f);
        let id = AlgebraHom::identity(&r);
        let ind = induced_endomorphism(&EndoCandidate::identity(&r), &id).unwrap();
        assert_eq!(ind.matrix, Matrix::identity(f, 4));
        for (u, _) in r.units().unwrap() {
            let c = EndoCandidate::conjugation(&u, &r).unwrap();
            let ind = induced_endomorphism(&c, &id).unwrap();
            assert_eq!(&ind.matrix, AlgebraHom::conjugation(&r, &u).unwrap().matrix());
            assert!(ind.is_hom && ind.is_injective);
        }
    }

    #[test]
    fn induced_along_scalar_inclusion() {
        let f = gf2();
        let k = StructAlgebra::ground_field(f);
        let s = m2(f);
        let incl = AlgebraHom::from_images(&k, &s, &[s.one()]).unwrap();
        let ind = induced_endomorphism(&EndoCandidate::identity(&k), &incl).unwrap();
        assert_eq!(ind.matrix, Matrix::identity(f, 4));
    }

    #[test]
    fn enumeration_counts() {
        let f = gf2();
        let m = enumerate_inner_endos(&m2(f), DEFAULT_BUDGET).unwrap();
        assert_eq!(m.count, 6);
        assert_eq!(m.scanned, 1 << 16);
        assert!(m.group_order_check);
        assert_eq!(m.routes_agree, Some(true));

        let t = enumerate_inner_endos(&StructAlgebra::upper_triangular(2, f), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.count, 2);
        assert!(t.group_order_check);
        assert_eq!(t.routes_agree, Some(true));

        let k = enumerate_inner_endos(&StructAlgebra::ground_field(f), DEFAULT_BUDGET).unwrap();
        assert_eq!(k.count, 1);
        assert_eq!(k.candidates[0].w, TensorElement::unit_square(&StructAlgebra::ground_field(f)).unwrap());
    }

    #[test]
    fn enumeration_budget() {
        let f = gf2();
        let r = m2(f);
        let small = enumerate_inner_endos(&r, 100).unwrap();
        assert_eq!(small.route, EnumerationRoute::Units);
        assert_eq!(small.count, 6);
        assert!(matches!(
            enumerate_inner_endos(&r, 4),
            Err(TensorError::BudgetExceeded { .. })
        ));
        assert_eq!(
            enumerate_inner_endos(&m2(Field::Rational), DEFAULT_BUDGET),
            Err(TensorError::InfiniteField)
        );
    }

    #[test]
    fn centralizer_examples() {
        let f = gf2();
        let s = m2(f);
        let id = AlgebraHom::identity(&s);
        let rep = centralizer_of_image(&EndoCandidate::identity(&s), &id).unwrap();
        assert_eq!((rep.dim, rep.matches), (1, true));
        let u = vector::from_i64(f, &[1, 1, 0, 0]);
        let c = EndoCandidate::conjugation(&u, &s).unwrap();
        assert_eq!(centralizer_of_image(&c, &id).unwrap().dim, 1);

        let comm = StructAlgebra::truncated_polynomial(f, 3);
        let id = AlgebraHom::identity(&comm);
        let rep = centralizer_of_image(&EndoCandidate::identity(&comm), &id).unwrap();
        assert_eq!(rep.dim, 3);
        assert!(rep.matches);
    }
}

//! The truncated twisted algebra `S = (R⊗1) ⊕ (R⊗R)t ⊕ (R⊗R)t²` with `t(r₁⊗r₂) = (r₂⊗r₁)t`
//! and `t³ = 0`, into which `R` embeds by `r ↦ r⊗1`.
//!
//! Basis of `S`: `e_i⊗1` at `i`, `(e_i⊗e_j)t` at `d + i·d + j`, `(e_i⊗e_j)t²` at
//! `d + d² + i·d + j`.

use thiserror::Error;

use crate::exactmath::{vector, Field, Matrix, Scalar};
use crate::tensoralg::{
    algebra_validate, check_endo_conditions, induced_matrix, AlgebraHom, AlgebraViolation, EndoCandidate,
    StructAlgebra, TensorError,
};

pub const DEFAULT_BASE_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("base dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("central witness needs a nonzero element")]
    ZeroInput,
    #[error("internal error: constructed algebra is not associative: {0}")]
    NotAssociative(AlgebraViolation),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Debug)]
pub struct TwistedTruncation {
    base: StructAlgebra,
    total: StructAlgebra,
    embed_matrix: Matrix,
}

impl TwistedTruncation {
    pub fn base(&self) -> &StructAlgebra {
        &self.base
    }

    pub fn total(&self) -> &StructAlgebra {
        &self.total
    }

    pub fn embed_matrix(&self) -> &Matrix {
        &self.embed_matrix
    }

    /// `f(r) = r⊗1`
    pub fn embedding(&self) -> AlgebraHom<'_> {
        AlgebraHom::new(&self.base, &self.total, self.embed_matrix.clone()).expect("checked at construction")
    }

    /// Index of `(e_i⊗e_j)t^k` for `k ∈ {1, 2}`, or of `e_i⊗1` for `k = 0`.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.base.dim();
        match k {
            0 => {
                assert_eq!(j, 0);
                i
            }
            1 => d + i * d + j,
            2 => d + d * d + i * d + j,
            _ => panic!("t-degree above 2"),
        }
    }

    /// `t = (1⊗1)t`
    pub fn t(&self) -> Vec<Scalar> {
        vector::unit(self.base.field(), self.total.dim(), self.index(0, 0, 1))
    }

    /// Basis indices of the `t`- and `t²`-summands.
    pub fn graded_indices(&self) -> std::ops::Range<usize> {
        self.base.dim()..self.total.dim()
    }
}

/// `θ(e_i⊗e_j) = e_j⊗e_i` on basis indices of `R⊗R`.
fn swap(idx: usize, d: usize) -> usize {
    (idx % d) * d + idx / d
}

pub fn build_embedding(r: &StructAlgebra) -> Result<TwistedTruncation, EmbedError> {
    build_embedding_capped(r, DEFAULT_BASE_CAP)
}

pub fn build_embedding_capped(r: &StructAlgebra, cap: usize) -> Result<TwistedTruncation, EmbedError> {
    let d = r.dim();
    if d > cap {
        return Err(EmbedError::DimensionCap { dim: d, cap });
    }
    let field = r.field();
    let rr = r.tensor_product(r);
    let n = d + 2 * d * d;
    // basis index of S to (index in R⊗R, t-degree)
    let decode = |x: usize| -> (usize, usize) {
        if x < d {
            (x * d, 0)
        } else if x < d + d * d {
            (x - d, 1)
        } else {
            (x - d - d * d, 2)
        }
    };
    let names: Vec<String> = (0..n)
        .map(|x| {
            let (p, k) = decode(x);
            let (i, j) = (p / d, p % d);
            match k {
                0 => r.names()[i].clone(),
                1 => format!("({}⊗{})t", r.names()[i], r.names()[j]),
                _ => format!("({}⊗{})t²", r.names()[i], r.names()[j]),
            }
        })
        .collect();
    let total = StructAlgebra::from_fn(field, n, Some(names), |x, y| {
        let (p, j) = decode(x);
        let (q, k) = decode(y);
        let mut out = vector::zeros(field, n);
        if j + k > 2 {
            return out;
        }
        let q = if j % 2 == 1 { swap(q, d) } else { q };
        for (m, c) in rr.basis_product(p, q).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = match j + k {
                0 => {
                    debug_assert_eq!(m % d, 0, "R⊗1 is closed under products");
                    m / d
                }
                1 => d + m,
                _ => d + d * d + m,
            };
            out[target] = c.clone();
        }
        out
    });
    if let Some(v) = algebra_validate(&total).violation {
        return Err(EmbedError::NotAssociative(v));
    }
    let embed_cols: Vec<Vec<Scalar>> = (0..d).map(|i| vector::unit(field, n, i)).collect();
    let embed_matrix = Matrix::from_columns(field, n, &embed_cols).map_err(TensorError::from)?;
    let tt = TwistedTruncation {
        base: r.clone(),
        total,
        embed_matrix,
    };
    let f = AlgebraHom::new(&tt.base, &tt.total, tt.embed_matrix.clone())?;
    if !f.is_injective() {
        return Err(EmbedError::Tensor(TensorError::InjectivityViolation));
    }
    Ok(tt)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralWitness {
    /// `(1⊗r)t²`
    pub c: Vec<Scalar>,
    pub nonzero: bool,
    /// `c = t·f(r)·t`
    pub in_ideal: bool,
    pub central: bool,
    /// `c·x = x·c = 0` on the graded summands.
    pub annihilates_graded: bool,
}

impl CentralWitness {
    pub fn passed(&self) -> bool {
        self.nonzero && self.in_ideal && self.central && self.annihilates_graded
    }
}

pub fn central_witness(tt: &TwistedTruncation, r_elem: &[Scalar]) -> Result<CentralWitness, EmbedError> {
    let r = tt.base();
    let s = tt.total();
    if r_elem.len() != r.dim() {
        return Err(EmbedError::Tensor(TensorError::Shape {
            expected: r.dim(),
            found: r_elem.len(),
        }));
    }
    if vector::is_zero(r_elem) {
        return Err(EmbedError::ZeroInput);
    }
    let mut c = s.zero();
    for (j, x) in r_elem.iter().enumerate() {
        c[tt.index(0, j, 2)] = x.clone();
    }
    let f = tt.embedding();
    let t = tt.t();
    let tft = s.mul(&s.mul(&t, &f.apply(r_elem)), &t);
    let central = (0..s.dim()).all(|x| {
        let e = s.basis(x);
        s.mul(&c, &e) == s.mul(&e, &c)
    });
    let annihilates_graded = tt.graded_indices().all(|x| {
        let e = s.basis(x);
        vector::is_zero(&s.mul(&c, &e)) && vector::is_zero(&s.mul(&e, &c))
    });
    Ok(CentralWitness {
        nonzero: !vector::is_zero(&c),
        in_ideal: tft == c,
        c,
        central,
        annihilates_graded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    /// The candidate passes the endomorphism conditions on `R`.
    pub candidate_passes: bool,
    pub centralizer_dim: usize,
    /// `β_f` fixes the centralizer of `f(R)` pointwise.
    pub fixes_centralizer: bool,
    pub kernel_dim: usize,
    /// `β_f ∘ f = f ∘ β_id` on `R`.
    pub restriction_matches: bool,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.candidate_passes && self.fixes_centralizer && self.kernel_dim == 0 && self.restriction_matches
    }
}

pub fn verify_injectivity_via_embedding(
    c: &EndoCandidate,
    tt: &TwistedTruncation,
) -> Result<InjectivityReport, EmbedError> {
    let r = tt.base();
    let s = tt.total();
    let candidate_passes = check_endo_conditions(c, r)?.passed();
    let f = tt.embedding();
    let beta = induced_matrix(c, &f)?;
    let images: Vec<Vec<Scalar>> = (0..r.dim()).map(|i| f.apply(&r.basis(i))).collect();
    let centralizer = s.centralizer(&images);
    let fixes_centralizer = centralizer.iter().all(|z| &beta.mul_vec(z).expect("square") == z);
    let restriction_matches = (0..r.dim()).all(|i| {
        let lhs = beta.mul_vec(&images[i]).expect("square");
        lhs == f.apply(&c.apply(r, &r.basis(i)))
    });
    Ok(InjectivityReport {
        candidate_passes,
        centralizer_dim: centralizer.len(),
        fixes_centralizer,
        kernel_dim: s.dim() - beta.rank(),
        restriction_matches,
    })
}

/// The embedding of `K` itself: `S = K ⊕ Kt ⊕ Kt²`.
pub fn ground_field_embedding(field: Field) -> TwistedTruncation {
    build_embedding(&StructAlgebra::ground_field(field)).expect("one-dimensional base")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensoralg::matrix_unit;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn ground_field_case() {
        let tt = ground_field_embedding(gf2());
        let s = tt.total();
        assert_eq!(s.dim(), 3);
        let t = tt.t();
        let t2 = s.mul(&t, &t);
        assert_eq!(t2, s.basis(2));
        assert!(vector::is_zero(&s.mul(&t2, &t)));
        let w = central_witness(&tt, &tt.base().one()).unwrap();
        assert_eq!(w.c, s.basis(2));
        assert!(w.passed());
    }

    #[test]
    fn dual_numbers_case() {
        let q = Field::Rational;
        let r = StructAlgebra::truncated_polynomial(q, 2);
        let tt = build_embedding(&r).unwrap();
        assert_eq!(tt.total().dim(), 10);
        for i in 0..2 {
            assert!(central_witness(&tt, &r.basis(i)).unwrap().passed());
        }
        assert_eq!(central_witness(&tt, &r.zero()).unwrap_err(), EmbedError::ZeroInput);
    }

    #[test]
    fn twist_rule() {
        let q = Field::Rational;
        let r = StructAlgebra::truncated_polynomial(q, 2);
        let tt = build_embedding(&r).unwrap();
        let s = tt.total();
        // t (z⊗1) = (1⊗z) t
        let lhs = s.mul(&tt.t(), &s.basis(tt.index(1, 0, 0)));
        assert_eq!(lhs, s.basis(tt.index(0, 1, 1)));
    }

    #[test]
    fn m2_case() {
        let f = gf2();
        let r = StructAlgebra::matrix_algebra(2, f);
        let tt = build_embedding(&r).unwrap();
        assert_eq!(tt.total().dim(), 36);
        let e12 = r.coords_of_matrix(&matrix_unit(f, 2, 0, 1)).unwrap();
        let w = central_witness(&tt, &e12).unwrap();
        assert!(w.passed());
        for (u, _) in r.units().unwrap() {
            let c = EndoCandidate::conjugation(&u, &r).unwrap();
            let rep = verify_injectivity_via_embedding(&c, &tt).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn identity_candidate_is_identity() {
        let tt = ground_field_embedding(gf2());
        let c = EndoCandidate::identity(tt.base());
        let beta = induced_matrix(&c, &tt.embedding()).unwrap();
        assert_eq!(beta, Matrix::identity(gf2(), 3));
        assert!(verify_injectivity_via_embedding(&c, &tt).unwrap().passed());
    }

    #[test]
    fn cap_enforced() {
        let r = StructAlgebra::truncated_polynomial(gf2(), 7);
        assert_eq!(
            build_embedding(&r).unwrap_err(),
            EmbedError::DimensionCap { dim: 7, cap: 6 }
        );
    }
}

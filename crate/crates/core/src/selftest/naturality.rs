//! Random commuting triangles under (or over) a fixed object, and the squares an extended system
//! must make commute along them.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::exactmath::{Field, Scalar};
use crate::freeprod::{apply_extended, inner_endo_monoid, FiniteGroup, GroupHom};
use crate::gset::{apply_coinner, coinner_group, free_cover, EquivariantMap, GSet};
use crate::tensoralg::{
    induced_matrix, inner_derivation_of, AlgebraHom, EndoCandidate, StructAlgebra, TensorError,
};

/// Outcome of one triangle; `squares` counts the commuting squares checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleOutcome {
    pub kind: &'static str,
    pub description: String,
    pub squares: usize,
    pub commutes: bool,
}

/// `f₂ = h ∘ f₁` with `f₁: G → H₁`, `h: H₁ → H₂`; checks `β_{f₂}(h(t)) = h(β_{f₁}(t))` for every
/// inner class of `G` and every `t ∈ H₁`.
pub fn group_triangle<R: Rng>(groups: &[(&str, FiniteGroup)], rng: &mut R) -> TriangleOutcome {
    let (gn, g) = groups.choose(rng).expect("nonempty");
    let (h1n, h1) = groups.choose(rng).expect("nonempty");
    let (h2n, h2) = groups.choose(rng).expect("nonempty");
    let f1s = GroupHom::enumerate(g, h1);
    let hs = GroupHom::enumerate(h1, h2);
    let f1 = f1s.choose(rng).expect("trivial hom exists");
    let h = hs.choose(rng).expect("trivial hom exists");
    let f2 = h.after(f1).expect("composable");
    let monoid = inner_endo_monoid(g);
    let mut squares = 0;
    let mut commutes = true;
    for &cls in &monoid.elements {
        for t in h1.elements() {
            squares += 1;
            let lhs = apply_extended(cls, &f2, h.apply(t)).expect("inner class");
            let rhs = h.apply(apply_extended(cls, f1, t).expect("inner class"));
            commutes &= lhs == rhs;
        }
    }
    TriangleOutcome {
        kind: "group",
        description: format!("{gn} → {h1n} → {h2n}"),
        squares,
        commutes,
    }
}

fn random_element<R: Rng>(r: &StructAlgebra, rng: &mut R) -> Vec<Scalar> {
    let field = r.field();
    (0..r.dim())
        .map(|_| match field.order() {
            Some(p) => field.from_i64(rng.random_range(0..p) as i64),
            None => field.from_i64(rng.random_range(-2..=2)),
        })
        .collect()
}

fn random_unit<R: Rng>(r: &StructAlgebra, rng: &mut R) -> Vec<Scalar> {
    loop {
        let u = random_element(r, rng);
        if r.inverse(&u).is_some() {
            return u;
        }
    }
}

/// `r ↦ u (r⊗1) u⁻¹` from `r` into `r⊗b`.
fn twisted_inclusion<'a, R: Rng>(
    r: &'a StructAlgebra,
    rb: &'a StructAlgebra,
    b_dim: usize,
    rng: &mut R,
) -> Result<AlgebraHom<'a>, TensorError> {
    let field = r.field();
    let images: Vec<Vec<Scalar>> = (0..r.dim())
        .map(|i| crate::exactmath::vector::unit(field, rb.dim(), i * b_dim))
        .collect();
    let inclusion = AlgebraHom::from_images(r, rb, &images)?;
    let u = random_unit(rb, rng);
    AlgebraHom::conjugation(rb, &u)?.after(&inclusion)
}

fn extension_factors(field: Field) -> Vec<(&'static str, StructAlgebra)> {
    vec![
        ("K", StructAlgebra::ground_field(field)),
        ("K[z]/(z²)", StructAlgebra::truncated_polynomial(field, 2)),
        ("M₂(K)", StructAlgebra::matrix_algebra(2, field)),
    ]
}

/// `R → R⊗B₁ → R⊗B₁⊗B₂` with random unit twists; checks `β_{f₂} h = h β_{f₁}` for a random inner
/// endomorphism and `d_{f₂} h = h d_{f₁}` for a random inner derivation.
pub fn algebra_triangle<R: Rng>(bases: &[(&str, StructAlgebra)], rng: &mut R) -> Result<TriangleOutcome, TensorError> {
    let (rn, r) = bases.choose(rng).expect("nonempty");
    let factors = extension_factors(r.field());
    let (b1n, b1) = factors.choose(rng).expect("nonempty");
    let s1 = r.tensor_product(b1);
    // keep S₂ at most 32-dimensional
    let small: Vec<&(&str, StructAlgebra)> = factors.iter().filter(|(_, b)| s1.dim() * b.dim() <= 32).collect();
    let (b2n, b2) = *small.choose(rng).expect("K always fits");
    let s2 = s1.tensor_product(b2);
    let f1 = twisted_inclusion(r, &s1, b1.dim(), rng)?;
    let h = twisted_inclusion(&s1, &s2, b2.dim(), rng)?;
    let f2 = h.after(&f1)?;

    let endo = EndoCandidate::conjugation(&random_unit(r, rng), r)?;
    let lhs = induced_matrix(&endo, &f2)?.mul(h.matrix())?;
    let rhs = h.matrix().mul(&induced_matrix(&endo, &f1)?)?;
    let deriv = inner_derivation_of(&random_element(r, rng), r)?;
    let dlhs = deriv.induced_matrix(&f2)?.mul(h.matrix())?;
    let drhs = h.matrix().mul(&deriv.induced_matrix(&f1)?)?;
    Ok(TriangleOutcome {
        kind: "algebra",
        description: format!("{rn} → {rn}⊗{b1n} → {rn}⊗{b1n}⊗{b2n} over {}", r.field()),
        squares: 2,
        commutes: lhs == rhs && dlhs == drhs,
    })
}

/// `f₁ = f₂ ∘ h` with `f₂: B₂ → A`, `h: B₁ → B₂`; checks `h ∘ E_{f₁} = E_{f₂} ∘ h` for a random
/// co-inner datum of `A`.
pub fn gset_triangle<R: Rng>(targets: &[(&str, GSet<'_>)], rng: &mut R) -> TriangleOutcome {
    let (an, a) = targets.choose(rng).expect("nonempty");
    let g = a.group();
    let regular = GSet::regular(g);
    let (cover, _) = free_cover(a);
    let both = a.disjoint_union(&regular).expect("same group");
    let sources: [(&str, &GSet<'_>); 4] = [("regular", &regular), ("cover", &cover), ("A", a), ("A ⊔ regular", &both)];
    let (b2n, b2) = sources.choose(rng).expect("nonempty");
    let f2s = EquivariantMap::enumerate(b2, a);
    let f2 = f2s.choose(rng).expect("A is nonempty and the identity or an orbit map exists");
    // the regular set maps to everything, and each source maps to itself
    let candidates: Vec<(&str, &GSet<'_>)> = sources
        .iter()
        .copied()
        .filter(|(_, b1)| !EquivariantMap::enumerate(b1, b2).is_empty())
        .collect();
    let (b1n, b1) = *candidates.choose(rng).expect("regular always maps");
    let hs = EquivariantMap::enumerate(b1, b2);
    let h = hs.choose(rng).expect("nonempty");
    let f1 = f2.after(h).expect("composable");
    let group = coinner_group(a);
    let d = group.elements.choose(rng).expect("identity datum");
    let e1 = apply_coinner(d, a, &f1).expect("valid datum");
    let e2 = apply_coinner(d, a, f2).expect("valid datum");
    let commutes = (0..b1.points()).all(|q| h.apply(e1[q]) == e2[h.apply(q)]);
    TriangleOutcome {
        kind: "gset",
        description: format!("{b1n} → {b2n} → {an}"),
        squares: b1.points(),
        commutes,
    }
}

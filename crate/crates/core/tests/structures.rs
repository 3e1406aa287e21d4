use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use innerscope::embed::{build_embedding, central_witness};
use innerscope::exactmath::{Field, Matrix, Scalar};
use innerscope::freeprod::FiniteGroup;
use innerscope::gset::{apply_coinner, coinner_group, free_cover, EquivariantMap, GSet};
use innerscope::selftest::{gset_triangle, naturality_suite};
use innerscope::tensoralg::{algebra_validate, AlgebraHom, StructAlgebra};

fn s3() -> FiniteGroup {
    FiniteGroup::symmetric(3)
}

fn s3_gsets(g: &FiniteGroup) -> Vec<(&'static str, GSet<'_>)> {
    let natural = GSet::natural(g).unwrap();
    let signs = GSet::cosets(g, &[3, 4]);
    vec![
        ("natural", natural.clone()),
        ("signs", signs.clone()),
        ("natural ⊔ signs", natural.disjoint_union(&signs).unwrap()),
        ("trivial²", GSet::trivial(g, 2)),
        ("cosets of ⟨(12)⟩ ⊔ point", GSet::cosets(g, &[2]).disjoint_union(&GSet::trivial(g, 1)).unwrap()),
    ]
}

proptest! {
    #[test]
    fn coinner_maps_are_equivariant_bijections_and_multiplicative(ai in 0usize..5, seed in any::<u64>()) {
        let g = s3();
        let targets = s3_gsets(&g);
        let a = &targets[ai].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = coinner_group(a);
        prop_assert!(group.iso_check);
        let (cover, map) = free_cover(a);
        let f = EquivariantMap::new(&cover, a, map).unwrap();
        let d1 = &group.elements[rng.random_range(0..group.order)];
        let d2 = &group.elements[rng.random_range(0..group.order)];
        let e1 = apply_coinner(d1, a, &f).unwrap();
        let e2 = apply_coinner(d2, a, &f).unwrap();
        let e12 = apply_coinner(&d1.compose(d2, a), a, &f).unwrap();

        let mut sorted = e1.clone();
        sorted.sort();
        prop_assert_eq!(sorted, (0..cover.points()).collect::<Vec<_>>());
        prop_assert!(EquivariantMap::new(&cover, &cover, e1.clone()).is_ok());
        prop_assert!(EquivariantMap::new(&cover, a, (0..cover.points()).map(|q| f.apply(e1[q])).collect()).is_ok());
        // maps act on the right of points, so the product datum applies d₂ first
        let composed: Vec<usize> = (0..cover.points()).map(|q| e1[e2[q]]).collect();
        prop_assert_eq!(e12, composed);
    }

    #[test]
    fn gset_naturality_squares_commute(seed in any::<u64>()) {
        let g = s3();
        let targets = s3_gsets(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = gset_triangle(&targets, &mut rng);
        prop_assert!(t.commutes, "{}", t.description);
    }
}

#[test]
fn naturality_suite_is_seeded_and_commutes() {
    let a = naturality_suite(10).unwrap();
    let b = naturality_suite(10).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 50);
    assert!(a.iter().all(|t| t.commutes));
}

/// Swap of tensor factors on `R⊗R`, written out from the index rule `i·d + j`.
fn swap_matrix(r: &StructAlgebra) -> Matrix {
    let d = r.dim();
    let f = r.field();
    let mut entries = vec![f.zero(); d * d * d * d];
    for i in 0..d {
        for j in 0..d {
            entries[(j * d + i) * d * d + (i * d + j)] = f.one();
        }
    }
    Matrix::new(f, d * d, d * d, entries).unwrap()
}

fn small_bases() -> Vec<StructAlgebra> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    vec![
        StructAlgebra::ground_field(Field::Rational),
        StructAlgebra::truncated_polynomial(f3, 2),
        StructAlgebra::upper_triangular(2, f2),
        StructAlgebra::matrix_algebra(2, f2),
    ]
}

fn random_vector(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n)
        .map(|_| match field.order() {
            Some(p) => field.from_i64(rng.random_range(0..p) as i64),
            None => field.from_i64(rng.random_range(-3..=3)),
        })
        .collect()
}

#[test]
fn factor_swap_is_an_involutive_automorphism() {
    for r in small_bases() {
        let rr = r.tensor_product(&r);
        let theta = AlgebraHom::new(&rr, &rr, swap_matrix(&r)).expect("multiplicative");
        assert_eq!(theta.after(&theta).unwrap().matrix(), &Matrix::identity(r.field(), rr.dim()));
    }
}

#[test]
fn twisted_truncation_is_associative() {
    for r in small_bases() {
        let tt = build_embedding(&r).unwrap();
        assert!(algebra_validate(tt.total()).is_valid());
        assert_eq!(tt.total().dim(), r.dim() * (1 + 2 * r.dim()));
    }
}

#[test]
fn central_witnesses_centralize_the_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for r in small_bases() {
        let tt = build_embedding(&r).unwrap();
        let f = tt.embedding();
        let s = tt.total();
        for _ in 0..5 {
            let x = random_vector(r.field(), r.dim(), &mut rng);
            if x.iter().all(Scalar::is_zero) {
                continue;
            }
            let w = central_witness(&tt, &x).unwrap();
            assert!(w.passed(), "{w:?}");
            let y = f.apply(&random_vector(r.field(), r.dim(), &mut rng));
            assert_eq!(s.mul(&w.c, &y), s.mul(&y, &w.c));
        }
    }
}

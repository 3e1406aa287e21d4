use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use innerscope::exactmath::{Field, Matrix, Scalar};
use innerscope::freeprod::{word_multiply, FiniteGroup, GroupInnerClass, ReducedWord, Syllable, VarId};
use innerscope::rewrite::{
    augmentation, confluence_check, leavitt_system, normal_form, normal_form_random, pbw_system, LieData, Monomial,
    NcPolynomial, RewriteSystem,
};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn matrix_over(field: Field, max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |xs| {
            Matrix::new(field, r, c, xs.iter().map(|&x| field.from_i64(x)).collect()).unwrap()
        })
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    prop_oneof![
        prime().prop_flat_map(|p| matrix_over(Field::prime(p).unwrap(), 6)),
        matrix_over(Field::Rational, 5),
    ]
}

proptest! {
    #[test]
    fn rank_equals_transpose_rank(m in any_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let once = m.rref_rank_kernel().rref;
        prop_assert_eq!(once.rref_rank_kernel().rref, once);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in any_matrix()) {
        let rr = m.rref_rank_kernel();
        prop_assert_eq!(rr.rank + rr.kernel.len(), m.cols());
        prop_assert_eq!(rr.rank, rr.pivots.len());
        for k in &rr.kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(Scalar::is_zero));
        }
        if !rr.kernel.is_empty() {
            let k = Matrix::from_columns(m.field(), m.cols(), &rr.kernel).unwrap();
            prop_assert_eq!(k.rank(), rr.kernel.len());
        }
    }

    #[test]
    fn scalar_strings_round_trip(n in -1000i64..1000, d in 1i64..50, p in prime()) {
        let q = Field::Rational.from_ratio(n, d).unwrap();
        prop_assert_eq!(q.to_string().parse::<Scalar>().unwrap(), q);
        let r = Field::prime(p).unwrap().from_i64(n);
        prop_assert_eq!(r.to_string().parse::<Scalar>().unwrap(), r);
    }
}

fn test_groups() -> Vec<FiniteGroup> {
    vec![FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::cyclic(6)]
}

fn raw_syllables(order: usize) -> impl Strategy<Value = Vec<Syllable>> {
    let syl = prop_oneof![
        (0..order).prop_map(Syllable::Elem),
        (0u32..2, -2i64..=2).prop_map(|(v, exp)| Syllable::Gen { var: VarId(v), exp }),
    ];
    prop::collection::vec(syl, 0..10)
}

/// Applies one randomly chosen local reduction at a time until none applies.
fn reduce_in_random_order(g: &FiniteGroup, mut w: Vec<Syllable>, rng: &mut ChaCha8Rng) -> Vec<Syllable> {
    loop {
        let mut sites = Vec::new();
        for (i, s) in w.iter().enumerate() {
            match *s {
                Syllable::Elem(a) if a == g.identity() => sites.push((i, 1)),
                Syllable::Gen { exp: 0, .. } => sites.push((i, 1)),
                _ => {}
            }
            if let Some(next) = w.get(i + 1) {
                match (*s, *next) {
                    (Syllable::Elem(_), Syllable::Elem(_)) => sites.push((i, 2)),
                    (Syllable::Gen { var: a, .. }, Syllable::Gen { var: b, .. }) if a == b => sites.push((i, 2)),
                    _ => {}
                }
            }
        }
        if sites.is_empty() {
            return w;
        }
        let (i, width) = sites[rng.random_range(0..sites.len())];
        if width == 1 {
            w.remove(i);
            continue;
        }
        let merged = match (w[i], w[i + 1]) {
            (Syllable::Elem(a), Syllable::Elem(b)) => Syllable::Elem(g.mul(a, b)),
            (Syllable::Gen { var, exp: e }, Syllable::Gen { exp: f, .. }) => Syllable::Gen { var, exp: e + f },
            _ => unreachable!(),
        };
        w.splice(i..i + 2, [merged]);
    }
}

proptest! {
    #[test]
    fn word_reduction_is_order_independent(gi in 0usize..3, seed in any::<u64>(), raw in raw_syllables(8)) {
        let g = &test_groups()[gi];
        let raw: Vec<Syllable> = raw
            .into_iter()
            .map(|s| match s {
                Syllable::Elem(a) => Syllable::Elem(a % g.order()),
                other => other,
            })
            .collect();
        let w = ReducedWord::from_syllables(g, raw.clone()).unwrap();
        prop_assert!(w.is_reduced(g));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            prop_assert_eq!(reduce_in_random_order(g, raw.clone(), &mut rng), w.syllables().to_vec());
        }
    }

    #[test]
    fn word_multiply_is_associative(gi in 0usize..3, a in raw_syllables(8), b in raw_syllables(8), c in raw_syllables(8)) {
        let g = &test_groups()[gi];
        let word = |raw: Vec<Syllable>| {
            let raw = raw.into_iter().map(|s| match s {
                Syllable::Elem(x) => Syllable::Elem(x % g.order()),
                other => other,
            });
            ReducedWord::from_syllables(g, raw).unwrap()
        };
        let (a, b, c) = (word(a), word(b), word(c));
        let left = word_multiply(&word_multiply(&a, &b, g).unwrap(), &c, g).unwrap();
        let right = word_multiply(&a, &word_multiply(&b, &c, g).unwrap(), g).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn distinct_conjugators_give_distinct_words() {
    for g in test_groups() {
        let mut words: Vec<ReducedWord> = g
            .elements()
            .map(|s| GroupInnerClass::Conjugation(s).word(&g, VarId(0)).unwrap())
            .collect();
        words.sort();
        words.dedup();
        assert_eq!(words.len(), g.order());
    }
}

fn random_polynomial(rs: &RewriteSystem, rng: &mut ChaCha8Rng) -> NcPolynomial {
    let n = rs.generators().len() as u32;
    let mut p = NcPolynomial::zero(rs.field());
    for _ in 0..rng.random_range(1..5) {
        let len = rng.random_range(0..5);
        let word: Vec<u32> = (0..len).map(|_| rng.random_range(0..n)).collect();
        p.add_term(Monomial(word), rs.field().from_i64(rng.random_range(-3..=3)));
    }
    p
}

#[test]
fn confluent_systems_are_strategy_independent() {
    let q = Field::Rational;
    let f3 = Field::prime(3).unwrap();
    let systems = [
        leavitt_system(2, q).unwrap(),
        leavitt_system(3, f3).unwrap(),
        pbw_system(&LieData::sl2(q)),
        pbw_system(&LieData::heisenberg(f3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for rs in &systems {
        assert!(confluence_check(rs).confluent());
        for _ in 0..5 {
            let p = random_polynomial(rs, &mut rng);
            let nf = normal_form(&p, rs);
            for _ in 0..100 {
                assert_eq!(normal_form_random(&p, rs, &mut rng), nf, "{}", rs.render(&p));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pbw_confluence_iff_jacobi(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5]), dim in 2usize..=3) {
        let field = Field::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = LieData::random_alternating(field, dim, &mut rng);
        prop_assert_eq!(confluence_check(&pbw_system(&l)).confluent(), l.jacobi_holds());
    }

    #[test]
    fn augmentation_is_multiplicative(seed in any::<u64>()) {
        let rs = pbw_system(&LieData::sl2(Field::Rational));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_polynomial(&rs, &mut rng);
        let b = random_polynomial(&rs, &mut rng);
        prop_assert_eq!(augmentation(&a.mul(&b)), &augmentation(&a) * &augmentation(&b));
        // normal forms stay in the same coset of the augmentation ideal
        prop_assert_eq!(augmentation(&normal_form(&a, &rs)), augmentation(&a));
    }
}

use std::collections::BTreeMap;

use super::{word_substitute, FiniteGroup, FreeProdError, GroupHom, ReducedWord, Syllable, VarId};

/// Classification of a one-variable word as a candidate extended inner endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupInnerClass {
    /// Every `β_f` is the trivial endomorphism.
    Trivial,
    /// `β_f(t) = f(s) t f(s)⁻¹`.
    Conjugation(usize),
    NotInner,
}

impl GroupInnerClass {
    pub fn render(&self, g: &FiniteGroup) -> String {
        match self {
            GroupInnerClass::Trivial => "Trivial".into(),
            GroupInnerClass::Conjugation(s) => format!("Conjugation({})", g.name(*s)),
            GroupInnerClass::NotInner => "NotInner".into(),
        }
    }

    /// The word `s·x·s⁻¹` (or the empty word), in the variable `x`.
    pub fn word(&self, g: &FiniteGroup, x: VarId) -> Option<ReducedWord> {
        match *self {
            GroupInnerClass::Trivial => Some(ReducedWord::empty()),
            GroupInnerClass::Conjugation(s) => Some(
                ReducedWord::elem(g, s)
                    .multiply(&ReducedWord::var(x), g)
                    .multiply(&ReducedWord::elem(g, g.inv(s)), g),
            ),
            GroupInnerClass::NotInner => None,
        }
    }
}

fn single_variable(w: &ReducedWord) -> Result<Option<VarId>, FreeProdError> {
    let vars = w.variables();
    if vars.len() > 1 {
        return Err(FreeProdError::WrongVariableCount(vars.len()));
    }
    Ok(vars.into_iter().next())
}

/// Decides `w(x₀x₁) = w(x₀)w(x₁)` in `G⟨x₀, x₁⟩` by comparing reduced forms.
pub fn check_generic_multiplicative(w: &ReducedWord, g: &FiniteGroup) -> Result<bool, FreeProdError> {
    let x = single_variable(w)?.unwrap_or(VarId(0));
    let x0 = VarId(x.0 + 1);
    let x1 = VarId(x.0 + 2);
    let id = GroupHom::identity(g);
    let sub = |img: ReducedWord| word_substitute(w, &id, &BTreeMap::from([(x, img)]));
    let lhs = sub(ReducedWord::var(x0).multiply(&ReducedWord::var(x1), g))?;
    let rhs = sub(ReducedWord::var(x0))?.multiply(&sub(ReducedWord::var(x1))?, g);
    Ok(lhs == rhs)
}

/// Syntactic classification: empty word, `x`, or `s x s⁻¹`.
pub fn classify_inner_endo_group(w: &ReducedWord, g: &FiniteGroup) -> Result<GroupInnerClass, FreeProdError> {
    single_variable(w)?;
    Ok(match w.syllables() {
        [] => GroupInnerClass::Trivial,
        [Syllable::Gen { exp: 1, .. }] => GroupInnerClass::Conjugation(g.identity()),
        [Syllable::Elem(s), Syllable::Gen { exp: 1, .. }, Syllable::Elem(t)] if g.inv(*s) == *t => {
            GroupInnerClass::Conjugation(*s)
        }
        _ => GroupInnerClass::NotInner,
    })
}

/// The monoid of extended inner endomorphisms of a group, with its composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerEndoMonoid {
    /// `Conjugation(s)` for every `s` in index order, then `Trivial`.
    pub elements: Vec<GroupInnerClass>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
    /// Whether `s ↦ Conjugation(s)`, `ε ↦ Trivial` is a monoid isomorphism from `G ∪ {ε}`.
    pub iso_check: bool,
}

impl InnerEndoMonoid {
    pub fn identity_index(&self) -> usize {
        let n = self.table.len();
        (0..n)
            .find(|&i| (0..n).all(|j| self.table[i][j] == j && self.table[j][i] == j))
            .expect("monoid has an identity")
    }

    /// Indices having a two-sided inverse.
    pub fn units(&self) -> Vec<usize> {
        let e = self.identity_index();
        let n = self.table.len();
        (0..n)
            .filter(|&i| (0..n).any(|j| self.table[i][j] == e && self.table[j][i] == e))
            .collect()
    }
}

/// Builds all extended inner endomorphisms of `g` and composes them by substituting words.
pub fn inner_endo_monoid(g: &FiniteGroup) -> InnerEndoMonoid {
    let x = VarId(0);
    let mut elements: Vec<GroupInnerClass> = g.elements().map(GroupInnerClass::Conjugation).collect();
    elements.push(GroupInnerClass::Trivial);
    let words: Vec<ReducedWord> = elements.iter().map(|c| c.word(g, x).expect("inner")).collect();
    let id = GroupHom::identity(g);
    let n = elements.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let composite = word_substitute(&words[i], &id, &BTreeMap::from([(x, words[j].clone())]))
                .expect("reduced word over g");
            let class = classify_inner_endo_group(&composite, g).expect("one variable");
            table[i][j] = elements
                .iter()
                .position(|c| *c == class)
                .expect("composite of inner endomorphisms is inner");
        }
    }
    let eps = g.order();
    let phi_mul = |a: usize, b: usize| if a == eps || b == eps { eps } else { g.mul(a, b) };
    let iso_check = (0..n).all(|a| (0..n).all(|b| table[a][b] == phi_mul(a, b)));
    InnerEndoMonoid {
        elements,
        table,
        iso_check,
    }
}

/// Value of the extended system `cls` at the object `f: G → H`, applied to `t ∈ H`.
pub fn apply_extended(cls: GroupInnerClass, f: &GroupHom<'_>, t: usize) -> Result<usize, FreeProdError> {
    let h = f.target();
    if t >= h.order() {
        return Err(FreeProdError::GroupMismatch);
    }
    match cls {
        GroupInnerClass::Conjugation(s) => Ok(h.conjugate(f.apply(s), t)),
        GroupInnerClass::Trivial => Ok(h.identity()),
        GroupInnerClass::NotInner => Err(FreeProdError::NotInnerClass),
    }
}

/// Endomorphisms `α` of `g` that admit, for every `f: G → H` with `H` among `targets`, some
/// endomorphism `β` of `H` with `β ∘ f = f ∘ α`, yet are neither trivial nor conjugations.
///
/// This is an exploration aid for the square-completion question: an empty result over the
/// given targets proves nothing in general.
pub fn extendibility_search<'a>(g: &'a FiniteGroup, targets: &'a [FiniteGroup]) -> Vec<GroupHom<'a>> {
    let endos = GroupHom::enumerate(g, g);
    let is_classical = |a: &GroupHom<'_>| {
        a.map().iter().all(|&x| x == g.identity())
            || g.elements().any(|s| g.elements().all(|t| a.apply(t) == g.conjugate(s, t)))
    };
    endos
        .into_iter()
        .filter(|alpha| !is_classical(alpha))
        .filter(|alpha| {
            targets.iter().all(|h| {
                let h_endos = GroupHom::enumerate(h, h);
                GroupHom::enumerate(g, h).iter().all(|f| {
                    h_endos
                        .iter()
                        .any(|beta| g.elements().all(|t| beta.apply(f.apply(t)) == f.apply(alpha.apply(t))))
                })
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{parse_word, VarNames};
    use super::*;

    fn word(s: &str, g: &FiniteGroup) -> ReducedWord {
        parse_word(s, g, &mut VarNames::standard()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g = FiniteGroup::symmetric(3);
        let t = g.element_by_name("(12)").unwrap();
        assert_eq!(
            classify_inner_endo_group(&word("(12) x (12)", &g), &g).unwrap(),
            GroupInnerClass::Conjugation(t)
        );
        assert_eq!(
            classify_inner_endo_group(&word("x", &g), &g).unwrap(),
            GroupInnerClass::Conjugation(g.identity())
        );
        assert_eq!(classify_inner_endo_group(&word("", &g), &g).unwrap(), GroupInnerClass::Trivial);
        assert_eq!(classify_inner_endo_group(&word("x^-1", &g), &g).unwrap(), GroupInnerClass::NotInner);
        assert_eq!(
            classify_inner_endo_group(&word("(123) x (123)", &g), &g).unwrap(),
            GroupInnerClass::NotInner
        );
        assert_eq!(
            classify_inner_endo_group(&word("x0 x1", &g), &g),
            Err(FreeProdError::WrongVariableCount(2))
        );
    }

    #[test]
    fn generic_multiplicativity_examples() {
        let g = FiniteGroup::symmetric(3);
        assert!(check_generic_multiplicative(&word("(123) x (132)", &g), &g).unwrap());
        assert!(!check_generic_multiplicative(&word("x^2", &g), &g).unwrap());
        assert!(!check_generic_multiplicative(&word("(12) x", &g), &g).unwrap());
        assert!(!check_generic_multiplicative(&word("x^-1", &g), &g).unwrap());
        assert!(check_generic_multiplicative(&word("", &g), &g).unwrap());
    }

    #[test]
    fn monoid_sizes() {
        let z2 = inner_endo_monoid(&FiniteGroup::cyclic(2));
        assert_eq!(z2.elements.len(), 3);
        assert!(z2.iso_check);
        let s3 = inner_endo_monoid(&FiniteGroup::symmetric(3));
        assert_eq!(s3.elements.len(), 7);
        assert_eq!(s3.units().len(), 6);
        assert!(s3.iso_check);
        let triv = inner_endo_monoid(&FiniteGroup::trivial());
        assert_eq!(triv.elements.len(), 2);
        assert!(triv.iso_check);
    }

    #[test]
    fn apply_examples() {
        let g = FiniteGroup::symmetric(3);
        let id = GroupHom::identity(&g);
        let c = g.element_by_name("(123)").unwrap();
        let t = g.element_by_name("(12)").unwrap();
        assert_eq!(g.name(apply_extended(GroupInnerClass::Conjugation(c), &id, t).unwrap()), "(23)");
        assert_eq!(apply_extended(GroupInnerClass::Conjugation(g.identity()), &id, t).unwrap(), t);
        assert_eq!(apply_extended(GroupInnerClass::Trivial, &id, t).unwrap(), g.identity());
        assert_eq!(
            apply_extended(GroupInnerClass::NotInner, &id, t),
            Err(FreeProdError::NotInnerClass)
        );
    }

    #[test]
    fn distinct_elements_give_distinct_words() {
        let g = FiniteGroup::dihedral(4);
        let mut words: Vec<_> = g
            .elements()
            .map(|s| GroupInnerClass::Conjugation(s).word(&g, VarId(0)).unwrap())
            .collect();
        words.sort();
        words.dedup();
        assert_eq!(words.len(), g.order());
    }

    #[test]
    fn search_runs_on_small_targets() {
        let g = FiniteGroup::cyclic(2);
        let targets = [FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)];
        // Z2 has only the trivial map and the identity as endomorphisms
        assert!(extendibility_search(&g, &targets).is_empty());
    }
}

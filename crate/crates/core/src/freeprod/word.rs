use std::collections::{BTreeMap, BTreeSet};

use super::{FiniteGroup, FreeProdError, GroupHom};

/// A free generator of `G ∗ F(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    /// A non-identity group element.
    Elem(usize),
    /// A nonzero power of a free generator.
    Gen { var: VarId, exp: i64 },
}

/// Normal form of an element of `G ∗ F(X)`: group syllables and generator powers with no
/// adjacent mergeable pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord {
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord::default()
    }

    pub fn var(var: VarId) -> ReducedWord {
        ReducedWord {
            syllables: vec![Syllable::Gen { var, exp: 1 }],
        }
    }

    pub fn elem(g: &FiniteGroup, a: usize) -> ReducedWord {
        if a == g.identity() {
            ReducedWord::empty()
        } else {
            ReducedWord {
                syllables: vec![Syllable::Elem(a)],
            }
        }
    }

    /// Reduces an arbitrary syllable sequence (identity elements and zero exponents allowed).
    pub fn from_syllables<I>(g: &FiniteGroup, raw: I) -> Result<ReducedWord, FreeProdError>
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut w = ReducedWord::empty();
        for s in raw {
            if let Syllable::Elem(a) = s {
                if a >= g.order() {
                    return Err(FreeProdError::GroupMismatch);
                }
            }
            w.push(g, s);
        }
        Ok(w)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.syllables
            .iter()
            .filter_map(|s| match s {
                Syllable::Gen { var, .. } => Some(*var),
                Syllable::Elem(_) => None,
            })
            .collect()
    }

    /// True iff the stored syllables satisfy the normal-form invariants for `g`.
    pub fn is_reduced(&self, g: &FiniteGroup) -> bool {
        let ok_single = self.syllables.iter().all(|s| match *s {
            Syllable::Elem(a) => a < g.order() && a != g.identity(),
            Syllable::Gen { exp, .. } => exp != 0,
        });
        let ok_pairs = self.syllables.windows(2).all(|w| match (w[0], w[1]) {
            (Syllable::Elem(_), Syllable::Elem(_)) => false,
            (Syllable::Gen { var: a, .. }, Syllable::Gen { var: b, .. }) => a != b,
            _ => true,
        });
        ok_single && ok_pairs
    }

    /// Appends one syllable, merging at the seam. The stack stays reduced after every push.
    fn push(&mut self, g: &FiniteGroup, s: Syllable) {
        match s {
            Syllable::Elem(a) if a == g.identity() => {}
            Syllable::Gen { exp: 0, .. } => {}
            Syllable::Elem(a) => match self.syllables.last() {
                Some(&Syllable::Elem(b)) => {
                    self.syllables.pop();
                    let ab = g.mul(b, a);
                    if ab != g.identity() {
                        self.syllables.push(Syllable::Elem(ab));
                    }
                }
                _ => self.syllables.push(s),
            },
            Syllable::Gen { var, exp } => match self.syllables.last() {
                Some(&Syllable::Gen { var: v, exp: e }) if v == var => {
                    self.syllables.pop();
                    if e + exp != 0 {
                        self.syllables.push(Syllable::Gen { var, exp: e + exp });
                    }
                }
                _ => self.syllables.push(s),
            },
        }
    }

    pub fn multiply(&self, other: &ReducedWord, g: &FiniteGroup) -> ReducedWord {
        let mut out = self.clone();
        for &s in &other.syllables {
            out.push(g, s);
        }
        out
    }

    pub fn inverse(&self, g: &FiniteGroup) -> ReducedWord {
        ReducedWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| match *s {
                    Syllable::Elem(a) => Syllable::Elem(g.inv(a)),
                    Syllable::Gen { var, exp } => Syllable::Gen { var, exp: -exp },
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64, g: &FiniteGroup) -> ReducedWord {
        let base = if k < 0 { self.inverse(g) } else { self.clone() };
        (0..k.unsigned_abs()).fold(ReducedWord::empty(), |acc, _| acc.multiply(&base, g))
    }

    /// The group element represented by a variable-free word.
    pub fn as_element(&self, g: &FiniteGroup) -> Option<usize> {
        match self.syllables.as_slice() {
            [] => Some(g.identity()),
            [Syllable::Elem(a)] => Some(*a),
            _ => None,
        }
    }

    /// Renders the word in the CLI syntax, e.g. `(12) x (12)` or `x^-1`.
    pub fn render(&self, g: &FiniteGroup, vars: &VarNames) -> String {
        self.syllables
            .iter()
            .map(|s| match *s {
                Syllable::Elem(a) => g.name(a).to_string(),
                Syllable::Gen { var, exp: 1 } => vars.name(var),
                Syllable::Gen { var, exp } => format!("{}^{}", vars.name(var), exp),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Multiplies two words of `G ∗ F(X)` and reduces the result.
pub fn word_multiply(u: &ReducedWord, v: &ReducedWord, g: &FiniteGroup) -> Result<ReducedWord, FreeProdError> {
    if !u.is_reduced(g) || !v.is_reduced(g) {
        return Err(FreeProdError::GroupMismatch);
    }
    Ok(u.multiply(v, g))
}

/// Image of `w` under the homomorphism `G ∗ F(X) → H ∗ F(X')` induced by `f` on group
/// syllables and by `images` on generators. Generators without an image are kept.
pub fn word_substitute(
    w: &ReducedWord,
    f: &GroupHom<'_>,
    images: &BTreeMap<VarId, ReducedWord>,
) -> Result<ReducedWord, FreeProdError> {
    let (g, h) = (f.source(), f.target());
    if !w.is_reduced(g) {
        return Err(FreeProdError::GroupMismatch);
    }
    let mut out = ReducedWord::empty();
    for s in w.syllables() {
        match *s {
            Syllable::Elem(a) => out.push(h, Syllable::Elem(f.apply(a))),
            Syllable::Gen { var, exp } => match images.get(&var) {
                Some(img) => out = out.multiply(&img.pow(exp, h), h),
                None => out.push(h, *s),
            },
        }
    }
    Ok(out)
}

/// Names of free generators, indexed by [`VarId`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
}

impl VarNames {
    pub fn new() -> VarNames {
        VarNames::default()
    }

    /// `x` followed by `x0, x1, …` for the generic-pair variables.
    pub fn standard() -> VarNames {
        VarNames {
            names: vec!["x".into(), "x0".into(), "x1".into()],
        }
    }

    pub fn intern(&mut self, name: &str) -> VarId {
        match self.names.iter().position(|n| n == name) {
            Some(i) => VarId(i as u32),
            None => {
                self.names.push(name.to_string());
                VarId(self.names.len() as u32 - 1)
            }
        }
    }

    pub fn name(&self, v: VarId) -> String {
        self.names
            .get(v.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("x{}", v.0))
    }
}

/// Parses whitespace-separated syllables such as `(12) x (12)` or `x^-1`.
///
/// A token's base is looked up among the group's element names first; any other identifier
/// is a free generator. An optional `^k` suffix raises either kind to the `k`-th power.
pub fn parse_word(s: &str, g: &FiniteGroup, vars: &mut VarNames) -> Result<ReducedWord, FreeProdError> {
    let mut raw = Vec::new();
    for token in s.split_whitespace() {
        let (base, exp) = match token.rsplit_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<i64>()
                    .map_err(|_| FreeProdError::Parse(format!("bad exponent in {token:?}")))?,
            ),
            None => (token, 1),
        };
        if let Some(a) = g.element_by_name(base) {
            raw.push(Syllable::Elem(g.pow(a, exp)));
        } else if is_identifier(base) {
            raw.push(Syllable::Gen {
                var: vars.intern(base),
                exp,
            });
        } else {
            return Err(FreeProdError::Parse(format!("unknown token {token:?}")));
        }
    }
    ReducedWord::from_syllables(g, raw)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// All one-variable reduced words with at most `max_len` syllables and exponents drawn from
/// `exps`, sorted canonically.
pub fn enumerate_words(g: &FiniteGroup, var: VarId, max_len: usize, exps: &[i64]) -> Vec<ReducedWord> {
    let elems: Vec<usize> = g.elements().filter(|&a| a != g.identity()).collect();
    let mut out = vec![ReducedWord::empty()];
    let mut frontier = vec![ReducedWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            match w.syllables.last() {
                Some(Syllable::Elem(_)) => {}
                _ => {
                    for &a in &elems {
                        let mut v = w.clone();
                        v.syllables.push(Syllable::Elem(a));
                        next.push(v);
                    }
                }
            }
            if !matches!(w.syllables.last(), Some(Syllable::Gen { .. })) {
                for &exp in exps {
                    let mut v = w.clone();
                    v.syllables.push(Syllable::Gen { var, exp });
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn cancellation_to_empty() {
        let g = s3();
        let mut vars = VarNames::standard();
        let u = parse_word("(123) x", &g, &mut vars).unwrap();
        let v = parse_word("x^-1 (132)", &g, &mut vars).unwrap();
        assert!(word_multiply(&u, &v, &g).unwrap().is_empty());
    }

    #[test]
    fn powers_merge() {
        let g = s3();
        let mut vars = VarNames::standard();
        let x = parse_word("x", &g, &mut vars).unwrap();
        let xx = word_multiply(&x, &x, &g).unwrap();
        assert_eq!(xx.render(&g, &vars), "x^2");
    }

    #[test]
    fn group_syllable_blocks_merging() {
        let g = s3();
        let mut vars = VarNames::standard();
        let u = parse_word("(12) x", &g, &mut vars).unwrap();
        let uu = word_multiply(&u, &u, &g).unwrap();
        assert_eq!(uu.render(&g, &vars), "(12) x (12) x");
        assert_eq!(uu.len(), 4);
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let g = s3();
        let mut vars = VarNames::standard();
        let w = parse_word("(12) x (12)", &g, &mut vars).unwrap();
        assert_eq!(w.render(&g, &vars), "(12) x (12)");
        assert!(parse_word("", &g, &mut vars).unwrap().is_empty());
        assert_eq!(parse_word("x^-1", &g, &mut vars).unwrap().render(&g, &vars), "x^-1");
        assert!(parse_word("(45)", &g, &mut vars).is_err());
        assert!(parse_word("x^a", &g, &mut vars).is_err());
        // group syllables multiply out
        assert!(parse_word("(12) (12)", &g, &mut vars).unwrap().is_empty());
    }

    #[test]
    fn substitution_of_conjugation_word() {
        let g = s3();
        let mut vars = VarNames::standard();
        let w = parse_word("(123) x (132)", &g, &mut vars).unwrap();
        let id = GroupHom::identity(&g);
        let t = g.element_by_name("(12)").unwrap();
        let images = BTreeMap::from([(VarId(0), ReducedWord::elem(&g, t))]);
        let img = word_substitute(&w, &id, &images).unwrap();
        assert_eq!(img.as_element(&g).map(|a| g.name(a).to_string()), Some("(23)".into()));

        let pair = parse_word("x0 x1", &g, &mut vars).unwrap();
        let images = BTreeMap::from([(VarId(0), pair)]);
        let img = word_substitute(&w, &id, &images).unwrap();
        assert_eq!(img.render(&g, &vars), "(123) x0 x1 (132)");
    }

    #[test]
    fn identity_word_substitutes_to_image() {
        let g = s3();
        let z2 = FiniteGroup::cyclic(2);
        let sign = GroupHom::enumerate(&g, &z2)
            .into_iter()
            .find(|h| h.map().contains(&1))
            .unwrap();
        let v = ReducedWord::from_syllables(&z2, [Syllable::Elem(1), Syllable::Gen { var: VarId(5), exp: 2 }]).unwrap();
        let images = BTreeMap::from([(VarId(0), v.clone())]);
        assert_eq!(word_substitute(&ReducedWord::var(VarId(0)), &sign, &images).unwrap(), v);
    }

    #[test]
    fn enumeration_counts() {
        let g = FiniteGroup::cyclic(2);
        // lengths 0..=2 over one non-identity element and exponents {±1}:
        // 1 + (1 + 2) + (2 + 2)
        assert_eq!(enumerate_words(&g, VarId(0), 2, &[-1, 1]).len(), 8);
        for w in enumerate_words(&FiniteGroup::symmetric(3), VarId(0), 3, &[-2, -1, 1, 2]) {
            assert!(w.is_reduced(&FiniteGroup::symmetric(3)));
        }
    }

    #[test]
    fn out_of_range_element_is_a_mismatch() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!(
            ReducedWord::from_syllables(&g, [Syllable::Elem(7)]),
            Err(FreeProdError::GroupMismatch)
        );
    }
}

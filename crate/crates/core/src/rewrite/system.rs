use rand::Rng;
use serde::Serialize;

use crate::exactmath::Field;

use super::{Monomial, NcPolynomial, RewriteError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<u32>,
    pub rhs: NcPolynomial,
}

/// Oriented rules `lhs → rhs` over generators listed in increasing precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    field: Field,
    generators: Vec<String>,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    /// Checks that every rule strictly decreases the deglex order.
    pub fn new(field: Field, generators: Vec<String>, rules: Vec<Rule>) -> Result<RewriteSystem, RewriteError> {
        let n = generators.len() as u32;
        for (i, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty() {
                return Err(RewriteError::EmptyLhs(i));
            }
            if rule.rhs.field() != field {
                return Err(RewriteError::FieldMismatch);
            }
            let lhs = Monomial(rule.lhs.clone());
            let letters_ok = rule.lhs.iter().all(|&g| g < n)
                && rule.rhs.terms().keys().all(|m| m.letters().iter().all(|&g| g < n));
            if !letters_ok {
                return Err(RewriteError::UnknownGenerator(i));
            }
            if rule.rhs.terms().keys().any(|m| *m >= lhs) {
                return Err(RewriteError::NotDecreasing(i));
            }
        }
        Ok(RewriteSystem {
            field,
            generators,
            rules,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g == name).map(|i| i as u32)
    }

    pub fn gen_poly(&self, name: &str) -> NcPolynomial {
        NcPolynomial::generator(self.field, self.generator(name).expect("known generator"))
    }

    /// The same rules over extra, relation-free generators appended at the top of the order.
    pub fn with_free_generators(&self, names: &[&str]) -> RewriteSystem {
        let mut generators = self.generators.clone();
        generators.extend(names.iter().map(|s| s.to_string()));
        RewriteSystem {
            field: self.field,
            generators,
            rules: self.rules.clone(),
        }
    }

    pub fn parse(&self, s: &str) -> Result<NcPolynomial, RewriteError> {
        super::parse_polynomial(s, &self.generators, self.field)
    }

    pub fn render(&self, p: &NcPolynomial) -> String {
        p.render(&self.generators)
    }

    /// First redex in `m`: leftmost position, then lowest rule index.
    fn find_redex(&self, m: &Monomial) -> Option<(usize, usize)> {
        let w = m.letters();
        for pos in 0..w.len() {
            for (i, r) in self.rules.iter().enumerate() {
                if w[pos..].starts_with(&r.lhs) {
                    return Some((pos, i));
                }
            }
        }
        None
    }

    fn all_redexes(&self, m: &Monomial) -> Vec<(usize, usize)> {
        let w = m.letters();
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for (i, r) in self.rules.iter().enumerate() {
                if w[pos..].starts_with(&r.lhs) {
                    out.push((pos, i));
                }
            }
        }
        out
    }

    pub fn is_irreducible(&self, m: &Monomial) -> bool {
        self.find_redex(m).is_none()
    }

    /// Irreducible words of length at most `max_len`, in deglex order.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        let mut layer = vec![Monomial::one()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.generators.len() as u32 {
                    let mut v = w.0.clone();
                    v.push(g);
                    let m = Monomial(v);
                    // a new redex can only end at the last letter
                    let fresh = self.rules.iter().all(|r| !m.letters().ends_with(&r.lhs));
                    if fresh {
                        next.push(m);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }
}

/// Reduces the largest reducible term first until no rule applies.
pub fn normal_form(p: &NcPolynomial, rs: &RewriteSystem) -> NcPolynomial {
    let mut work = p.clone();
    let mut done = NcPolynomial::zero(p.field());
    while let Some((m, c)) = work.pop_last() {
        match rs.find_redex(&m) {
            None => done.add_term(m, c),
            Some((pos, i)) => {
                let rule = &rs.rules[i];
                let w = m.letters();
                work.add_scaled_sandwich(&c, &w[..pos], &rule.rhs, &w[pos + rule.lhs.len()..]);
            }
        }
    }
    done
}

/// Reduces a random term at a random redex at every step.
pub fn normal_form_random<R: Rng>(p: &NcPolynomial, rs: &RewriteSystem, rng: &mut R) -> NcPolynomial {
    let mut work = p.clone();
    let mut done = NcPolynomial::zero(p.field());
    while !work.is_zero() {
        let k = rng.random_range(0..work.len());
        let m = work.terms().keys().nth(k).expect("index in range").clone();
        let c = work.remove(&m).expect("present");
        let redexes = rs.all_redexes(&m);
        if redexes.is_empty() {
            done.add_term(m, c);
            continue;
        }
        let (pos, i) = redexes[rng.random_range(0..redexes.len())];
        let rule = &rs.rules[i];
        let w = m.letters();
        work.add_scaled_sandwich(&c, &w[..pos], &rule.rhs, &w[pos + rule.lhs.len()..]);
    }
    done
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AmbiguityKind {
    /// `lhs_i = AB`, `lhs_j = BC`
    Overlap,
    /// `lhs_i = A lhs_j C`
    Inclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub rule_a: usize,
    pub rule_b: usize,
    /// Offset of `lhs_b` inside the ambiguous word.
    pub position: usize,
    pub kind: AmbiguityKind,
    pub word: Monomial,
    /// Normal form of the difference of the two branches.
    pub difference: NcPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub checked: usize,
    /// Unresolved ambiguities sorted by `(rule_a, rule_b, position)`.
    pub failures: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Diamond-lemma check over all overlap and inclusion ambiguities.
pub fn confluence_check(rs: &RewriteSystem) -> ConfluenceReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    let field = rs.field;
    for (i, ri) in rs.rules.iter().enumerate() {
        for (j, rj) in rs.rules.iter().enumerate() {
            let (a, b) = (&ri.lhs, &rj.lhs);
            // overlaps: a suffix of lhs_i equals a proper prefix of lhs_j
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] != b[..k] {
                    continue;
                }
                checked += 1;
                let mut word = a.clone();
                word.extend_from_slice(&b[k..]);
                let pos = a.len() - k;
                let mut left = NcPolynomial::zero(field);
                left.add_scaled_sandwich(&field.one(), &[], &ri.rhs, &b[k..]);
                let mut right = NcPolynomial::zero(field);
                right.add_scaled_sandwich(&field.one(), &a[..pos], &rj.rhs, &[]);
                let diff = normal_form(&left.sub(&right), rs);
                if !diff.is_zero() {
                    failures.push(Ambiguity {
                        rule_a: i,
                        rule_b: j,
                        position: pos,
                        kind: AmbiguityKind::Overlap,
                        word: Monomial(word),
                        difference: diff,
                    });
                }
            }
            if i == j || b.len() > a.len() {
                continue;
            }
            for pos in Monomial(a.clone()).occurrences(b).collect::<Vec<_>>() {
                checked += 1;
                let mut right = NcPolynomial::zero(field);
                right.add_scaled_sandwich(&field.one(), &a[..pos], &rj.rhs, &a[pos + b.len()..]);
                let diff = normal_form(&ri.rhs.sub(&right), rs);
                if !diff.is_zero() {
                    failures.push(Ambiguity {
                        rule_a: i,
                        rule_b: j,
                        position: pos,
                        kind: AmbiguityKind::Inclusion,
                        word: Monomial(a.clone()),
                        difference: diff,
                    });
                }
            }
        }
    }
    failures.sort_by_key(|f| (f.rule_a, f.rule_b, f.position));
    ConfluenceReport { checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn increasing_rule_rejected() {
        let q = Field::Rational;
        let rule = Rule {
            lhs: vec![0],
            rhs: NcPolynomial::generator(q, 1),
        };
        assert_eq!(
            RewriteSystem::new(q, names(&["a", "b"]), vec![rule]).unwrap_err(),
            RewriteError::NotDecreasing(0)
        );
    }

    #[test]
    fn commutative_rule_gives_sorted_words() {
        let q = Field::Rational;
        let rule = Rule {
            lhs: vec![1, 0],
            rhs: NcPolynomial::monomial(q, Monomial(vec![0, 1])),
        };
        let rs = RewriteSystem::new(q, names(&["a", "b"]), vec![rule]).unwrap();
        let p = rs.parse("b*a*b*a - a*a*b*b").unwrap();
        assert!(normal_form(&p, &rs).is_zero());
        assert!(confluence_check(&rs).confluent());
        let words = rs.irreducible_words(3);
        assert_eq!(words.len(), 1 + 2 + 3 + 4);
    }

    #[test]
    fn nonconfluent_system_reported() {
        // aa → a and ba → 1: baa reduces to both a and 1
        let q = Field::Rational;
        let rules = vec![
            Rule {
                lhs: vec![0, 0],
                rhs: NcPolynomial::generator(q, 0),
            },
            Rule {
                lhs: vec![1, 0],
                rhs: NcPolynomial::one(q),
            },
        ];
        let rs = RewriteSystem::new(q, names(&["a", "b"]), rules).unwrap();
        let report = confluence_check(&rs);
        assert!(!report.confluent());
        let f = &report.failures[0];
        assert_eq!((f.rule_a, f.rule_b), (1, 0));
        assert_eq!(f.word, Monomial(vec![1, 0, 0]));
    }

    #[test]
    fn random_strategy_agrees_on_confluent_system() {
        let q = Field::Rational;
        let rule = Rule {
            lhs: vec![1, 0],
            rhs: NcPolynomial::monomial(q, Monomial(vec![0, 1])).add(&NcPolynomial::one(q)),
        };
        let rs = RewriteSystem::new(q, names(&["a", "b"]), vec![rule]).unwrap();
        let p = rs.parse("b*b*a*a + 2*b*a*b").unwrap();
        let expected = normal_form(&p, &rs);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(normal_form_random(&p, &rs, &mut rng), expected);
        }
    }
}

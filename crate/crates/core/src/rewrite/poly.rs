use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactmath::{Field, Scalar};

use super::RewriteError;

/// A word in generator ids, ordered degree-lexicographically.
///
/// Generator ids double as precedence: a larger id is a larger letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn letter(g: u32) -> Monomial {
        Monomial(vec![g])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// Positions where `pattern` occurs as a factor.
    pub fn occurrences(&self, pattern: &[u32]) -> impl Iterator<Item = usize> + '_ {
        let pattern = pattern.to_vec();
        let n = pattern.len();
        (0..=self.0.len().saturating_sub(n))
            .filter(move |&i| n <= self.0.len() && self.0[i..i + n] == pattern[..])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPolynomial {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NcPolynomial {
    pub fn zero(field: Field) -> NcPolynomial {
        NcPolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> NcPolynomial {
        NcPolynomial::constant(field.one())
    }

    pub fn constant(c: Scalar) -> NcPolynomial {
        NcPolynomial::term(c, Monomial::one())
    }

    pub fn generator(field: Field, g: u32) -> NcPolynomial {
        NcPolynomial::term(field.one(), Monomial::letter(g))
    }

    pub fn monomial(field: Field, m: Monomial) -> NcPolynomial {
        NcPolynomial::term(field.one(), m)
    }

    pub fn term(c: Scalar, m: Monomial) -> NcPolynomial {
        let mut p = NcPolynomial::zero(c.field());
        p.add_term(m, c);
        p
    }

    /// `Σ cᵢ gᵢ` for a coordinate vector over the generators `0..`.
    pub fn linear(coords: &[Scalar], field: Field) -> NcPolynomial {
        let mut p = NcPolynomial::zero(field);
        for (g, c) in coords.iter().enumerate() {
            p.add_term(Monomial::letter(g as u32), c.clone());
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(c.field(), self.field, "field mismatch in polynomial arithmetic");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub(crate) fn pop_last(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop_last()
    }

    pub(crate) fn remove(&mut self, m: &Monomial) -> Option<Scalar> {
        self.terms.remove(m)
    }

    /// `self += c · left · other · right`
    pub fn add_scaled_sandwich(&mut self, c: &Scalar, left: &[u32], other: &NcPolynomial, right: &[u32]) {
        for (m, x) in &other.terms {
            let mut w = Vec::with_capacity(left.len() + m.degree() + right.len());
            w.extend_from_slice(left);
            w.extend_from_slice(&m.0);
            w.extend_from_slice(right);
            self.add_term(Monomial(w), c * x);
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPolynomial) -> NcPolynomial {
        self.add(&other.scale(&-&self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), c * x);
        }
        out
    }

    /// Free product, without reduction.
    pub fn mul(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field);
        for (m, x) in &self.terms {
            for (n, y) in &other.terms {
                out.add_term(m.concat(n), x * y);
            }
        }
        out
    }

    pub fn commutator(&self, other: &NcPolynomial) -> NcPolynomial {
        self.mul(other).sub(&other.mul(self))
    }

    /// Whether every term has degree exactly `d` (zero counts).
    pub fn is_homogeneous_of_degree(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Degree-1 coefficients as a vector over `dim` generators.
    pub fn linear_part(&self, dim: usize) -> Vec<Scalar> {
        (0..dim as u32)
            .map(|g| self.coefficient(&Monomial::letter(g)))
            .collect()
    }

    /// Renders with generator names, largest term first, e.g. `e*f*h - h^2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = split_sign(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = render_word(m, names);
            match (abs.is_one(), word.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&word),
                (false, true) => out.push_str(&coeff_str(&abs)),
                (false, false) => out.push_str(&format!("{}*{word}", coeff_str(&abs))),
            }
        }
        out
    }
}

fn split_sign(c: &Scalar) -> (bool, Scalar) {
    match c {
        Scalar::Rational(q) if q < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
        _ => (false, c.clone()),
    }
}

fn coeff_str(c: &Scalar) -> String {
    match c {
        Scalar::Residue { value, .. } => value.to_string(),
        _ => c.to_string(),
    }
}

fn render_word(m: &Monomial, names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = m.letters();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let mut k = 1;
        while i + k < letters.len() && letters[i + k] == g {
            k += 1;
        }
        let name = names.get(g as usize).cloned().unwrap_or_else(|| format!("g{g}"));
        parts.push(if k == 1 { name } else { format!("{name}^{k}") });
        i += k;
    }
    parts.join("*")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|g| format!("g{g}")).collect();
        if s.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", s.join("*"))
        }
    }
}

/// Parses `"x1*y1 - 1"`, `"2*e*f + h^2"`, `"-1/2*h"`. Factors within a term are separated by
/// `*` or spaces; names resolve against `names`.
pub fn parse_polynomial(s: &str, names: &[String], field: Field) -> Result<NcPolynomial, RewriteError> {
    let err = |msg: String| RewriteError::Parse(format!("{msg} in {s:?}"));
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    let mut prev = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
            } else if !terms.is_empty() || negative {
                return Err(err("dangling sign".into()));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if current.trim().is_empty() {
        return Err(err("empty term".into()));
    }
    terms.push((negative, current));
    let mut out = NcPolynomial::zero(field);
    for (neg, t) in terms {
        let mut term = parse_term(t.trim(), names, field).map_err(err)?;
        if neg {
            term = term.scale(&-&field.one());
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn parse_term(t: &str, names: &[String], field: Field) -> Result<NcPolynomial, String> {
    if t.is_empty() {
        return Err("empty term".into());
    }
    let mut coeff = field.one();
    let mut word = Vec::new();
    for factor in t.split(|c: char| c == '*' || c.is_whitespace()).filter(|f| !f.is_empty()) {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| format!("bad exponent {e:?}"))?),
            None => (factor, 1),
        };
        if let Some(g) = names.iter().position(|n| n == base) {
            for _ in 0..exp {
                word.push(g as u32);
            }
        } else if base.starts_with(|c: char| c.is_ascii_digit()) {
            let c = field.parse_scalar(base).map_err(|e| e.to_string())?;
            coeff = &coeff * &c.pow(exp as u64);
        } else {
            return Err(format!("unknown generator {base:?}"));
        }
    }
    Ok(NcPolynomial::term(coeff, Monomial(word)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn deglex_order() {
        let a = Monomial(vec![1, 0]);
        let b = Monomial(vec![0, 1]);
        let c = Monomial(vec![2]);
        assert!(b < a);
        assert!(c < b);
        assert!(Monomial::one() < c);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let q = Field::Rational;
        let x = NcPolynomial::generator(q, 0);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.add(&x).coefficient(&Monomial::letter(0)), q.from_i64(2));
    }

    #[test]
    fn parse_and_render() {
        let q = Field::Rational;
        let n = names(&["x1", "x2", "y1", "y2"]);
        let p = parse_polynomial("x1*y1 - 1", &n, q).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.constant_term(), q.from_i64(-1));
        assert_eq!(p.render(&n), "x1*y1 - 1");
        let p = parse_polynomial("-1/2*x2^2 + 3 x1", &n, q).unwrap();
        assert_eq!(p.render(&n), "-1/2*x2^2 + 3*x1");
        assert!(parse_polynomial("z", &n, q).is_err());
        assert!(parse_polynomial("", &n, q).is_err());
    }

    #[test]
    fn parse_over_prime_field() {
        let f = Field::prime(3).unwrap();
        let n = names(&["e", "f", "h"]);
        let p = parse_polynomial("4*h - h", &n, f).unwrap();
        assert!(p.is_zero());
    }
}

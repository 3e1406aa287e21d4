use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::MathError;

/// Largest modulus accepted for prime fields. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The base field: the rationals or a prime field `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `GF(p)`, rejecting composites and moduli that do not fit a machine word product.
    pub fn prime(p: u64) -> Result<Field, MathError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(MathError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `0` for the rationals, `p` otherwise.
    pub fn from_characteristic(char: u64) -> Result<Field, MathError> {
        if char == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(char)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, numer: i64, denom: i64) -> Result<Scalar, MathError> {
        if denom == 0 {
            return Err(MathError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(
                BigInt::from(numer),
                BigInt::from(denom),
            ))),
            Field::Prime(_) => self.from_i64(denom).try_inv().map(|d| &self.from_i64(numer) * &d),
        }
    }

    /// All field elements in increasing residue order, for prime fields.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Residue { value: v, modulus: p }).collect()),
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// Parses a scalar in the string format and coerces it into this field.
    ///
    /// Accepts `"n"`, `"n/d"` and `"k mod p"`; the last only when `p` matches.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, MathError> {
        let parsed: Scalar = s.parse()?;
        self.coerce(&parsed)
    }

    /// Maps a rational into this field (reduction mod `p`), or checks a residue matches.
    pub fn coerce(self, x: &Scalar) -> Result<Scalar, MathError> {
        match (self, x) {
            (Field::Rational, Scalar::Rational(_)) => Ok(x.clone()),
            (Field::Prime(p), Scalar::Residue { modulus, .. }) if *modulus == p => Ok(x.clone()),
            (Field::Prime(p), Scalar::Rational(q)) => {
                let big_p = BigInt::from(p);
                let numer = q.numer().mod_floor(&big_p).to_u64().unwrap_or(0);
                let denom = q.denom().mod_floor(&big_p).to_u64().unwrap_or(0);
                let d = Scalar::Residue { value: denom, modulus: p };
                let inv = d.try_inv()?;
                Ok(&Scalar::Residue { value: numer, modulus: p } * &inv)
            }
            _ => Err(MathError::FieldMismatch {
                left: self,
                right: x.field(),
            }),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Serialized form used in input files: `{"char": p}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub char: u64,
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> Self {
        FieldSpec { char: f.characteristic() }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator, residues in `[0, p)`.
/// The arithmetic operators panic when the two operands live in different fields; use the
/// `try_*` methods (or [`scalar_arith`]) where inputs have not been validated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), MathError> {
        let (l, r) = (self.field(), other.field());
        if l == r {
            Ok(())
        } else {
            Err(MathError::FieldMismatch { left: l, right: r })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: (a * b) % p,
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.try_add(&-other)
    }

    pub fn try_inv(&self) -> Result<Scalar, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.try_mul(&other.try_inv()?)
    }

    /// Panicking inverse for nonzero values.
    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero")
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer residue or numerator accessor, for compact formatting of small values.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => i64::try_from(*value).ok(),
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Operation selector for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked field arithmetic. Binary operations require `y`; unary ones ignore it.
pub fn scalar_arith(op: ArithOp, x: &Scalar, y: Option<&Scalar>) -> Result<Scalar, MathError> {
    match op {
        ArithOp::Add => x.try_add(y.ok_or(MathError::MissingOperand)?),
        ArithOp::Mul => x.try_mul(y.ok_or(MathError::MissingOperand)?),
        ArithOp::Neg => Ok(-x),
        ArithOp::Inv => x.try_inv(),
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                *a = (*a + b) % *p;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &-rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                assert_eq!(p, q, "scalar field mismatch");
                *a = (*a * b) % *p;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a *= b,
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Scalar, MathError> {
        let s = s.trim();
        let bad = || MathError::Parse(s.to_string());
        if let Some((k, p)) = s.split_once(" mod ") {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let field = Field::prime(p)?;
            let k: BigInt = k.trim().parse().map_err(|_| bad())?;
            let value = k.mod_floor(&BigInt::from(p)).to_u64().ok_or_else(bad)?;
            debug_assert_eq!(field, Field::Prime(p));
            return Ok(Scalar::Residue { value, modulus: p });
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        let q = BigRational::new(n, d);
        debug_assert!(q.denom().is_positive());
        Ok(Scalar::Rational(q))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two() {
        let q = Field::Rational;
        assert_eq!(q.from_i64(2).inv(), q.from_ratio(1, 2).unwrap());
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.from_i64(2).inv(), f3.from_i64(2));
    }

    #[test]
    fn thirds_and_sixths() {
        let q = Field::Rational;
        let a = q.from_ratio(1, 3).unwrap();
        let b = q.from_ratio(1, 6).unwrap();
        assert_eq!(scalar_arith(ArithOp::Add, &a, Some(&b)).unwrap(), q.from_ratio(1, 2).unwrap());
    }

    #[test]
    fn errors() {
        let q = Field::Rational;
        let f5 = Field::prime(5).unwrap();
        assert_eq!(q.zero().try_inv(), Err(MathError::DivisionByZero));
        assert!(matches!(
            q.one().try_add(&f5.one()),
            Err(MathError::FieldMismatch { .. })
        ));
        assert_eq!(Field::prime(9), Err(MathError::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(MathError::NotPrime(1)));
        assert!(scalar_arith(ArithOp::Mul, &q.one(), None).is_err());
    }

    #[test]
    fn canonical_forms() {
        let x: Scalar = "4/-6".parse().unwrap();
        assert_eq!(x.to_string(), "-2/3");
        let y: Scalar = "7 mod 5".parse().unwrap();
        assert_eq!(y.to_string(), "2 mod 5");
        let z: Scalar = "-1 mod 5".parse().unwrap();
        assert_eq!(z.to_string(), "4 mod 5");
        assert!("1 mod 4".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn coercion_into_prime_field() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.parse_scalar("-1").unwrap(), f5.from_i64(4));
        assert!(f5.parse_scalar("1 mod 3").is_err());
        assert!(f5.parse_scalar("1/5").is_err());
        assert!(Field::Rational.parse_scalar("1 mod 3").is_err());
    }

    #[test]
    fn fermat_power() {
        let f7 = Field::prime(7).unwrap();
        for v in 1..7 {
            assert!(f7.from_i64(v).pow(6).is_one());
        }
    }
}

//! Base fields: exact rationals and prime fields, plus the classification
//! contexts for the reals and the p-adic numbers (which compute with
//! rationals and only differ in how square classes are decided).

pub mod arith;
mod extension;
mod square_class;
pub mod univariate;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use extension::{ExtElement, SimpleExtension};
pub use square_class::{hilbert_symbol, reduce_square_class, Place, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldContext {
    Rationals,
    PrimeField(u64),
    RealClassifier,
    PadicClassifier(u64),
}

impl FieldContext {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldContext::PrimeField(p))
    }

    pub fn padic(p: u64) -> Result<Self> {
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldContext::PadicClassifier(p))
    }

    /// Parses the CLI field strings `QQ`, `RR`, `Fp:<p>` and `Qp:<p>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "QQ" => return Ok(FieldContext::Rationals),
            "RR" => return Ok(FieldContext::RealClassifier),
            _ => {}
        }
        let parse_p = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime in field spec {spec:?}")))
        };
        if let Some(p) = spec.strip_prefix("Fp:") {
            let p = parse_p(p)?;
            return Self::prime_field(p);
        }
        if let Some(p) = spec.strip_prefix("Qp:") {
            let p = parse_p(p)?;
            return Self::padic(p);
        }
        Err(Error::Parse(format!("unknown field spec {spec:?}")))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldContext::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// The modulus elements are reduced by, `None` for rational arithmetic.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldContext::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_char2(&self) -> bool {
        self.characteristic() == 2
    }

    /// True when elements are rationals (QQ, RR, Qp contexts).
    pub fn is_rational_backed(&self) -> bool {
        self.modulus().is_none()
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.modulus() {
            Some(p) => FieldElement::Residue {
                value: arith::residue(n, p),
                modulus: p,
            },
            None => FieldElement::Rational(BigRational::from_integer(n.clone())),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self.modulus() {
            Some(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                num.div(&den)
            }
            None => Ok(FieldElement::Rational(q.clone())),
        }
    }

    /// Parses an integer or `p/q` literal.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad number literal {s:?}"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }

    /// Reinterprets an element of `other` in this context. Allowed between
    /// rational-backed contexts and between identical prime fields.
    pub fn coerce(&self, a: &FieldElement) -> Result<FieldElement> {
        match (self.modulus(), a) {
            (None, FieldElement::Rational(_)) => Ok(a.clone()),
            (Some(p), FieldElement::Residue { modulus, .. }) if *modulus == p => Ok(a.clone()),
            (Some(_), FieldElement::Rational(q)) => self.from_rational(q),
            _ => Err(Error::ContextMismatch(format!(
                "cannot move {a} into {self}"
            ))),
        }
    }

    pub fn is_compatible(&self, other: &FieldContext) -> bool {
        self.modulus() == other.modulus()
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::Rationals => write!(f, "QQ"),
            FieldContext::RealClassifier => write!(f, "RR"),
            FieldContext::PrimeField(p) => write!(f, "Fp:{p}"),
            FieldContext::PadicClassifier(p) => write!(f, "Qp:{p}"),
        }
    }
}

/// An exact element of QQ or of a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Residue { .. } => None,
        }
    }

    pub fn zero_like(&self) -> FieldElement {
        match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::zero()),
            FieldElement::Residue { modulus, .. } => FieldElement::Residue {
                value: 0,
                modulus: *modulus,
            },
        }
    }

    pub fn one_like(&self) -> FieldElement {
        match self {
            FieldElement::Rational(_) => FieldElement::Rational(BigRational::one()),
            FieldElement::Residue { modulus, .. } => FieldElement::Residue {
                value: 1,
                modulus: *modulus,
            },
        }
    }

    /// Integer multiple `n * self`.
    pub fn scale_int(&self, n: i64) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(q * BigInt::from(n)),
            FieldElement::Residue { value, modulus } => {
                let n = arith::residue(&BigInt::from(n), *modulus);
                FieldElement::Residue {
                    value: arith::mul_mod(*value, n, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: arith::inv_mod(*value, *modulus).expect("nonzero residue"),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of a rational element; `None` for residues.
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    pub(crate) fn small_int(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(q) if q.is_integer() => q.numer().to_i64(),
            FieldElement::Residue { value, .. } => i64::try_from(*value).ok(),
            _ => None,
        }
    }

    fn check(&self, other: &FieldElement) {
        match (self, other) {
            (FieldElement::Rational(_), FieldElement::Rational(_)) => {}
            (
                FieldElement::Residue { modulus: a, .. },
                FieldElement::Residue { modulus: b, .. },
            ) if a == b => {}
            _ => panic!("field element context mismatch: {self:?} vs {other:?}"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => {
                let s = (*a as u128 + *b as u128) % *modulus as u128;
                FieldElement::Residue {
                    value: s as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, .. },
            ) => FieldElement::Residue {
                value: arith::mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// A commutative ring in which polynomials over the base field can be evaluated.
pub trait ScalarRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn embed(&self, c: &FieldElement) -> Self::Elem;
}

impl ScalarRing for FieldContext {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldContext::zero(self)
    }
    fn one(&self) -> FieldElement {
        FieldContext::one(self)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }
    fn embed(&self, c: &FieldElement) -> FieldElement {
        c.clone()
    }
}

/// Numerator and denominator of a rational, as integers.
pub(crate) fn rational_parts(q: &BigRational) -> (BigInt, BigInt) {
    let g = q.numer().gcd(q.denom());
    (q.numer() / &g, q.denom() / &g)
}

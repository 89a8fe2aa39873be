use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{legendre_big, smallest_non_residue, split_valuation, squarefree_part};
use super::{rational_parts, FieldContext, FieldElement};
use crate::error::{Error, Result};

/// A class in k*/(k*)^2, stored as its canonical integer representative.
///
/// Representatives: QQ uses sign times a squarefree positive integer, RR
/// uses +-1, F_p uses 1 or the least non-residue, Q_p (p odd) uses
/// {1, u, p, up} with u the least non-residue, Q_2 uses {+-1, +-2, +-5, +-10}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    context: FieldContext,
    rep: BigInt,
}

impl SquareClass {
    pub fn context(&self) -> FieldContext {
        self.context
    }

    pub fn representative(&self) -> &BigInt {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    /// The class as an element of the field.
    pub fn to_element(&self) -> FieldElement {
        self.context.from_bigint(&self.rep)
    }

    pub fn one(context: FieldContext) -> Self {
        SquareClass {
            context,
            rep: BigInt::one(),
        }
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        debug_assert_eq!(self.context, other.context);
        canonical_rep(self.context, &(&self.rep * &other.rep))
    }

    /// Class of -1 in the same context.
    pub fn minus_one(context: FieldContext) -> SquareClass {
        canonical_rep(context, &BigInt::from(-1))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

fn canonical_rep(context: FieldContext, m: &BigInt) -> SquareClass {
    debug_assert!(!m.is_zero());
    let rep = match context {
        FieldContext::Rationals => {
            let sf = BigInt::from(squarefree_part(&m.abs().to_biguint().unwrap()));
            if m.is_negative() {
                -sf
            } else {
                sf
            }
        }
        FieldContext::RealClassifier => {
            if m.is_negative() {
                BigInt::from(-1)
            } else {
                BigInt::one()
            }
        }
        FieldContext::PrimeField(2) => BigInt::one(),
        FieldContext::PrimeField(p) => {
            if legendre_big(m, p) == 1 {
                BigInt::one()
            } else {
                BigInt::from(smallest_non_residue(p))
            }
        }
        FieldContext::PadicClassifier(2) => {
            let (v, u) = split_valuation(m, 2);
            let unit: i64 = match u.mod_floor(&BigInt::from(8)).to_u64().unwrap() {
                1 => 1,
                3 => -5,
                5 => 5,
                7 => -1,
                _ => unreachable!("odd unit"),
            };
            BigInt::from(if v % 2 == 1 { 2 * unit } else { unit })
        }
        FieldContext::PadicClassifier(p) => {
            let (v, u) = split_valuation(m, p);
            let unit = if legendre_big(&u, p) == 1 {
                BigInt::one()
            } else {
                BigInt::from(smallest_non_residue(p))
            };
            if v % 2 == 1 {
                unit * BigInt::from(p)
            } else {
                unit
            }
        }
    };
    SquareClass { context, rep }
}

fn element_to_int(a: &FieldElement) -> BigInt {
    match a {
        FieldElement::Rational(q) => {
            // n/d and n*d differ by the square d^2.
            let (n, d) = rational_parts(q);
            n * d
        }
        FieldElement::Residue { value, .. } => BigInt::from(*value),
    }
}

/// Canonical square class of a nonzero element.
pub fn reduce_square_class(context: FieldContext, a: &FieldElement) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let a = context.coerce(a)?;
    Ok(canonical_rep(context, &element_to_int(&a)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// The Hilbert symbol (a, b) at a place of QQ.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let (an, ad) = rational_parts(a);
    let (bn, bd) = rational_parts(b);
    Ok(hilbert_int(&(an * ad), &(bn * bd), place))
}

pub(crate) fn hilbert_int(a: &BigInt, b: &BigInt, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let eps = |x: &BigInt| u64::from(x.mod_floor(&BigInt::from(4)) == BigInt::from(3));
            let omega = |x: &BigInt| {
                let r = x.mod_floor(&BigInt::from(8)).to_u64().unwrap();
                u64::from(r == 3 || r == 5)
            };
            let e = eps(&u) * eps(&v) + alpha as u64 * omega(&v) + beta as u64 * omega(&u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let eps = ((p - 1) / 2) % 2;
            let mut sign: i8 = if (alpha as u64 * beta as u64 * eps) % 2 == 1 {
                -1
            } else {
                1
            };
            if beta % 2 == 1 {
                sign *= legendre_big(&u, p);
            }
            if alpha % 2 == 1 {
                sign *= legendre_big(&v, p);
            }
            sign
        }
    }
}

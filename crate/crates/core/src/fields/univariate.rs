//! Dense univariate polynomials over a base field: the moduli of simple
//! extensions and the fibers of maps of the affine line.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::factorize;
use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    ctx: FieldContext,
    /// Ascending coefficients, no trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(ctx: FieldContext, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { ctx, coeffs }
    }

    pub fn zero(ctx: FieldContext) -> Self {
        UniPoly {
            ctx,
            coeffs: vec![],
        }
    }

    pub fn constant(ctx: FieldContext, c: FieldElement) -> Self {
        Self::new(ctx, vec![c])
    }

    /// The monomial `t`.
    pub fn var(ctx: FieldContext) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn from_i64s(ctx: FieldContext, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.ctx,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.ctx,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.ctx, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Self::zero(self.ctx), self.clone());
        }
        let mut quot = vec![self.ctx.zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(self.ctx, quot), Self::new(self.ctx, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.ctx,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.ctx, self.ctx.one()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Divides out `(t - a)` as often as possible, returning the multiplicity.
    pub fn deflate_root(&mut self, a: &FieldElement) -> usize {
        let lin = Self::new(self.ctx, vec![-a, self.ctx.one()]);
        let mut m = 0;
        while !self.is_zero() && self.eval(a).is_zero() {
            *self = self.div_rem(&lin).0;
            m += 1;
        }
        m
    }

    /// Distinct roots lying in the base field.
    pub fn roots(&self) -> Vec<FieldElement> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let mut roots = match self.ctx.modulus() {
            None => rational_roots(self),
            Some(p) => roots_mod_p(self, p),
        };
        roots.sort_by(|a, b| match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => x.cmp(y),
            _ => a.small_int().cmp(&b.small_int()),
        });
        roots.dedup();
        roots
    }

    /// Irreducibility over the base field. Over QQ this is decided for
    /// degree at most 4; larger degrees report `IrreducibilityUnverified`.
    pub fn check_irreducible(&self) -> Result<()> {
        let d = self.degree().ok_or(Error::ZeroElement)?;
        if d == 0 {
            return Err(Error::Reducible("constant modulus".into()));
        }
        if d == 1 {
            return Ok(());
        }
        match self.ctx.modulus() {
            Some(p) => {
                if is_irreducible_mod_p(&self.monic(), p) {
                    Ok(())
                } else {
                    Err(Error::Reducible(self.to_string()))
                }
            }
            None => {
                if !self.roots().is_empty() {
                    return Err(Error::Reducible(format!("{self} has a rational root")));
                }
                match d {
                    2 | 3 => Ok(()),
                    4 => match quartic_quadratic_factor(&self.monic()) {
                        Some(q) => Err(Error::Reducible(format!("{self} has the factor {q}"))),
                        None => Ok(()),
                    },
                    _ => Err(Error::IrreducibilityUnverified(d)),
                }
            }
        }
    }

    /// Splits a squarefree polynomial without roots in the base field into
    /// irreducible factors where that can be certified. Each entry carries
    /// a flag telling whether it is certified irreducible.
    pub fn split_rootless_squarefree(&self) -> Vec<(UniPoly, bool)> {
        let f = self.monic();
        let d = match f.degree() {
            None | Some(0) => return vec![],
            Some(d) => d,
        };
        match self.ctx.modulus() {
            Some(p) => split_mod_p(&f, p),
            None => match d {
                1..=3 => vec![(f, true)],
                4 => match quartic_quadratic_factor(&f) {
                    Some(q) => {
                        let other = f.div_rem(&q).0;
                        vec![(q, true), (other, true)]
                    }
                    None => vec![(f, true)],
                },
                _ => vec![(f, false)],
            },
        }
    }

    /// Yun squarefree decomposition over QQ: `(part, multiplicity)` pairs.
    /// In positive characteristic the parts are only guaranteed squarefree
    /// when no p-th powers occur; callers treat leftover mass as unresolved.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let fp = f.derivative();
        if fp.is_zero() {
            return vec![(f, 0)];
        }
        let mut out = Vec::new();
        let mut a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let g = b.gcd(&d);
            b = b.div_rem(&g).0;
            c = d.div_rem(&g).0;
            if g.degree().unwrap_or(0) > 0 {
                out.push((g, i));
            }
            d = c.sub(&b.derivative());
            i += 1;
            if i > f.degree().unwrap() + 1 {
                break;
            }
        }
        a = a.monic();
        if a.degree().unwrap_or(0) > 0 && self.ctx.modulus().is_some() {
            // Leftover p-th power content in characteristic p.
            out.push((a, 0));
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Integer polynomial with the same roots, scaled to primitive form.
fn integer_coeffs(f: &UniPoly) -> Vec<BigInt> {
    let qs: Vec<BigRational> = f
        .coeffs
        .iter()
        .map(|c| c.as_rational().expect("rational polynomial").clone())
        .collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn rational_roots(f: &UniPoly) -> Vec<FieldElement> {
    let ctx = f.ctx;
    let mut roots = Vec::new();
    let mut g = f.clone();
    if g.coeff(0).is_zero() {
        roots.push(ctx.zero());
        g.deflate_root(&ctx.zero());
    }
    if g.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let ints = integer_coeffs(&g);
    let a0 = ints[0].abs().to_biguint().unwrap();
    let an = ints.last().unwrap().abs().to_biguint().unwrap();
    let nums = divisors(&a0);
    let dens = divisors(&an);
    for n in &nums {
        for d in &dens {
            for sign in [1i32, -1] {
                let cand =
                    BigRational::new(BigInt::from(n.clone()) * sign, BigInt::from(d.clone()));
                let x = FieldElement::Rational(cand);
                if g.eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

fn t_minus(ctx: FieldContext, h: &UniPoly) -> UniPoly {
    h.sub(&UniPoly::var(ctx))
}

fn roots_mod_p(f: &UniPoly, p: u64) -> Vec<FieldElement> {
    let ctx = f.ctx;
    let f = f.monic();
    if p < 64 {
        return (0..p)
            .map(|a| ctx.from_i64(a as i64))
            .filter(|a| f.eval(a).is_zero())
            .collect();
    }
    let tp = UniPoly::var(ctx).pow_mod(p, &f);
    let g = f.gcd(&t_minus(ctx, &tp));
    let mut out = Vec::new();
    for factor in equal_degree_split(&g, 1, p) {
        // monic linear: t + c
        out.push(-&factor.coeff(0));
    }
    out
}

/// Deterministic equal-degree splitting of a product of distinct monic
/// irreducibles of degree `d` over F_p, p odd.
fn equal_degree_split(g: &UniPoly, d: usize, p: u64) -> Vec<UniPoly> {
    let ctx = g.ctx;
    let deg = match g.degree() {
        None | Some(0) => return vec![],
        Some(n) => n,
    };
    if deg == d {
        return vec![g.monic()];
    }
    // Split with gcd(g, (t + s)^((p^d - 1)/2) - 1) for s = 0, 1, 2, ...
    for shift in 0u64.. {
        let base = UniPoly::new(ctx, vec![ctx.from_i64(shift as i64), ctx.one()]);
        let half = half_power(&base, d, p, g);
        let cand = half.sub(&UniPoly::constant(ctx, ctx.one()));
        let split = g.gcd(&cand);
        let sd = split.degree().unwrap_or(0);
        if sd > 0 && sd < deg {
            let other = g.div_rem(&split).0;
            let mut out = equal_degree_split(&split, d, p);
            out.extend(equal_degree_split(&other, d, p));
            return out;
        }
        if shift > 10_000 {
            break;
        }
    }
    vec![g.monic()]
}

/// `base^((p^d - 1) / 2) mod g` using `(p^d - 1)/2 = (p-1)/2 * (1 + p + ... + p^(d-1))`.
fn half_power(base: &UniPoly, d: usize, p: u64, g: &UniPoly) -> UniPoly {
    let b = base.pow_mod((p - 1) / 2, g);
    let mut acc = b.clone();
    let mut cur = b;
    for _ in 1..d {
        cur = cur.pow_mod(p, g);
        acc = acc.mul(&cur).rem(g);
    }
    acc
}

fn is_irreducible_mod_p(f: &UniPoly, p: u64) -> bool {
    let ctx = f.ctx;
    let n = f.degree().unwrap();
    if !f.is_squarefree() {
        return false;
    }
    // Rabin: t^(p^n) = t mod f and gcd(t^(p^(n/q)) - t, f) = 1 for primes q | n.
    let t = UniPoly::var(ctx);
    let mut powers = vec![t.rem(f)];
    for i in 1..=n {
        let next = powers[i - 1].pow_mod(p, f);
        powers.push(next);
    }
    if t_minus(ctx, &powers[n]).rem(f).degree().is_some() {
        return false;
    }
    let primes: Vec<usize> = (2..=n)
        .filter(|q| n.is_multiple_of(*q) && (2..*q).all(|r| q % r != 0))
        .collect();
    primes
        .into_iter()
        .all(|q| f.gcd(&t_minus(ctx, &powers[n / q])).degree() == Some(0))
}

fn split_mod_p(f: &UniPoly, p: u64) -> Vec<(UniPoly, bool)> {
    let ctx = f.ctx;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = UniPoly::var(ctx);
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.monic(), true));
            break;
        }
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&t_minus(ctx, &h));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            if g.degree() == Some(d) {
                out.push((g, true));
            } else if p == 2 {
                out.push((g, false));
            } else {
                out.extend(equal_degree_split(&g, d, p).into_iter().map(|q| (q, true)));
            }
        }
    }
    out
}

/// A monic quadratic factor of a monic quartic over QQ, if one exists.
fn quartic_quadratic_factor(f: &UniPoly) -> Option<UniPoly> {
    let ctx = f.ctx;
    let qs: Vec<BigRational> = f
        .coeffs
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    // g(s) = l^4 f(s/l) is monic with integer coefficients.
    let g: Vec<BigInt> = (0..=4)
        .map(|k| (&qs[k] * BigRational::from_integer(l.pow(4 - k as u32))).to_integer())
        .collect();
    let (s0, r1, q2, p3) = (&g[0], &g[1], &g[2], &g[3]);
    if s0.is_zero() {
        return None;
    }
    for dpos in divisors(&s0.abs().to_biguint().unwrap()) {
        for sign in [1i32, -1] {
            let b = BigInt::from(dpos.clone()) * sign;
            let d = s0 / &b;
            let candidates: Vec<BigInt> = if d != b {
                let num = r1 - &b * p3;
                let den = &d - &b;
                if (&num % &den).is_zero() {
                    vec![num / den]
                } else {
                    vec![]
                }
            } else {
                let disc = p3 * p3 - BigInt::from(4) * (q2 - BigInt::from(2) * &b);
                if disc.is_negative() {
                    vec![]
                } else {
                    let s = disc.sqrt();
                    if &s * &s != disc {
                        vec![]
                    } else {
                        let two = BigInt::from(2);
                        [p3 + &s, p3 - &s]
                            .into_iter()
                            .filter(|x| x.is_even())
                            .map(|x| x / &two)
                            .collect()
                    }
                }
            };
            for a in candidates {
                let c = p3 - &a;
                if &a * &c + &b + &d == *q2 && &a * &d + &b * &c == *r1 {
                    // s^2 + a s + b with s = l t, made monic in t.
                    let lq = BigRational::from_integer(l.clone());
                    let c1 = BigRational::from_integer(a) / &lq;
                    let c0 = BigRational::from_integer(b) / (&lq * &lq);
                    return Some(UniPoly::new(
                        ctx,
                        vec![
                            FieldElement::Rational(c0),
                            FieldElement::Rational(c1),
                            ctx.one(),
                        ],
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const QQ: FieldContext = FieldContext::Rationals;

    #[test]
    fn division_and_gcd() {
        let f = UniPoly::from_i64s(QQ, &[-1, 0, 1]);
        let g = UniPoly::from_i64s(QQ, &[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, UniPoly::from_i64s(QQ, &[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&UniPoly::from_i64s(QQ, &[1, 2, 1])), g);
    }

    #[test]
    fn rational_roots_found() {
        // (2t - 1)(t + 3)(t^2 + 1)
        let f = UniPoly::from_i64s(QQ, &[-1, 2])
            .mul(&UniPoly::from_i64s(QQ, &[3, 1]))
            .mul(&UniPoly::from_i64s(QQ, &[1, 0, 1]));
        let roots = f.roots();
        assert_eq!(roots, vec![QQ.from_i64(-3), QQ.from_ratio(1, 2).unwrap()]);
    }

    #[test]
    fn irreducibility_over_qq() {
        assert!(UniPoly::from_i64s(QQ, &[1, 0, 1])
            .check_irreducible()
            .is_ok());
        assert!(UniPoly::from_i64s(QQ, &[-2, 0, 1])
            .check_irreducible()
            .is_ok());
        assert!(UniPoly::from_i64s(QQ, &[-1, 0, 1])
            .check_irreducible()
            .is_err());
        // t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2)
        assert!(matches!(
            UniPoly::from_i64s(QQ, &[4, 0, 0, 0, 1]).check_irreducible(),
            Err(Error::Reducible(_))
        ));
        // t^4 - 2 is irreducible
        assert!(UniPoly::from_i64s(QQ, &[-2, 0, 0, 0, 1])
            .check_irreducible()
            .is_ok());
        assert_eq!(
            UniPoly::from_i64s(QQ, &[1, 0, 0, 0, 0, 1]).check_irreducible(),
            Err(Error::Reducible("t^5 + 1 has a rational root".into()))
        );
        assert_eq!(
            UniPoly::from_i64s(QQ, &[2, 0, 0, 0, 0, 1]).check_irreducible(),
            Err(Error::IrreducibilityUnverified(5))
        );
    }

    #[test]
    fn irreducibility_and_roots_mod_p() {
        let f5 = FieldContext::PrimeField(5);
        assert!(UniPoly::from_i64s(f5, &[2, 0, 1])
            .check_irreducible()
            .is_ok());
        assert!(UniPoly::from_i64s(f5, &[1, 0, 1])
            .check_irreducible()
            .is_err());
        let f101 = FieldContext::PrimeField(101);
        let f = UniPoly::from_i64s(f101, &[-4, 0, 1]).mul(&UniPoly::from_i64s(f101, &[1, 0, 1]));
        // -1 is a square mod 101 (10^2 = 100), so four roots.
        let roots = f.roots();
        assert_eq!(roots.len(), 4);
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
        let split = UniPoly::from_i64s(f101, &[2, 0, 1]).mul(&UniPoly::from_i64s(f101, &[3, 0, 1]));
        let parts = split.split_rootless_squarefree();
        assert!(parts.iter().all(|(_, certified)| *certified));
        assert_eq!(
            parts
                .iter()
                .map(|(q, _)| q.degree().unwrap())
                .sum::<usize>(),
            4
        );
    }

    #[test]
    fn squarefree_decomposition_over_qq() {
        // (t - 1)^2 (t + 2)
        let f = UniPoly::from_i64s(QQ, &[-1, 1])
            .mul(&UniPoly::from_i64s(QQ, &[-1, 1]))
            .mul(&UniPoly::from_i64s(QQ, &[2, 1]));
        let parts = f.squarefree_decomposition();
        assert_eq!(
            parts,
            vec![
                (UniPoly::from_i64s(QQ, &[2, 1]), 1),
                (UniPoly::from_i64s(QQ, &[-1, 1]), 2)
            ]
        );
        assert!(!f.is_squarefree());
    }
}

//! Sparse multivariate polynomials over a base field.

mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::univariate::UniPoly;
use crate::fields::{FieldContext, FieldElement, ScalarRing};

pub use order::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;

/// The ambient ring k[x_1, ..., x_n]: a field context and ordered variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    ctx: FieldContext,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(ctx: FieldContext, vars: &[S]) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            ctx,
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
        })
    }

    /// `x1, ..., xn`.
    pub fn standard(ctx: FieldContext, n: usize) -> Arc<PolyRing> {
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Self::new(ctx, &vars)
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same variables over a different (arithmetic-compatible) context.
    pub fn with_context(&self, ctx: FieldContext) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            ctx,
            vars: self.vars.clone(),
        })
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.ctx.one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, ring.ctx.from_i64(c))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.ctx.one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElement) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn context(&self) -> FieldContext {
        self.ring.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.ctx.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        self.terms
            .iter()
            .reduce(|a, b| if order.cmp(a.0, b.0).is_lt() { b } else { a })
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shifted(&mut self, c: &FieldElement, m: &Monomial, other: &Polynomial) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &(c * oc));
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "polynomials over {} {:?} and {} {:?}",
                self.ring.ctx, self.ring.vars, other.ring.ctx, other.ring.vars
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_scaled_shifted(c, m, other);
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), &c.scale_int(e as i64));
        }
        out
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a point of any ring containing the base field.
    pub fn evaluate<R: ScalarRing>(&self, ring: &R, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        // Power tables per variable, built lazily up to the largest exponent used.
        let mut powers: Vec<Vec<R::Elem>> = vec![vec![ring.one()]; point.len()];
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = ring.embed(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = ring.mul(powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                t = ring.mul(&t, &powers[i][e as usize]);
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluation at a base-field point.
    pub fn evaluate_at(&self, point: &[FieldElement]) -> Result<FieldElement> {
        let ctx = self.context();
        let point: Vec<FieldElement> =
            point.iter().map(|a| ctx.coerce(a)).collect::<Result<_>>()?;
        self.evaluate(&ctx, &point)
    }

    /// `f(x + a)`: moves the point `a` to the origin.
    pub fn translate(&self, a: &[FieldElement]) -> Result<Polynomial> {
        let ctx = self.context();
        let shifted: Vec<Polynomial> = a
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                Ok(&Self::var(&self.ring, i) + &Self::constant(&self.ring, ctx.coerce(ai)?))
            })
            .collect::<Result<_>>()?;
        self.evaluate(&self.ring, &shifted)
    }

    /// Substitutes a constant for `x_i`.
    pub fn substitute(&self, i: usize, value: &FieldElement) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            let mut exps = m.exps().to_vec();
            exps[i] = 0;
            out.add_term(Monomial::new(exps), &(c * &value.pow(e as u64)));
        }
        out
    }

    /// Indices of the variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exps()[i] > 0))
            .collect()
    }

    /// The polynomial as a univariate polynomial in `x_i`; every other
    /// variable must be absent.
    pub fn to_univariate(&self, i: usize) -> Result<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return Err(Error::InvalidInput(format!(
                    "{self} involves variables other than {}",
                    self.ring.vars[i]
                )));
            }
            let e = m.exps()[i] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, self.context().zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(self.context(), coeffs))
    }

    pub fn from_univariate(ring: &Arc<PolyRing>, i: usize, u: &UniPoly) -> Polynomial {
        let n = ring.nvars();
        Self::from_terms(
            ring,
            u.coeffs().iter().enumerate().map(|(e, c)| {
                let mut exps = vec![0; n];
                exps[i] = e as u32;
                (Monomial::new(exps), c.clone())
            }),
        )
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        let order = MonomialOrder::GlobalDegRevLex;
        let (lm, lc) = divisor.leading_term(order).ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.inv()?);
        let mut rest = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((m, c)) = rest.leading_term(order) {
            let q = m.div(&lm).ok_or_else(|| {
                Error::InternalContradiction(format!("{divisor} does not divide {self}"))
            })?;
            let qc = c * &lc_inv;
            rest.add_scaled_shifted(&-&qc, &q, divisor);
            quot.add_term(q, &qc);
        }
        Ok(quot)
    }

    /// Same terms in a ring with the same variables but another compatible context.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        if ring.vars != self.ring.vars {
            return Err(Error::ContextMismatch("variable lists differ".into()));
        }
        let ctx = ring.ctx;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), ctx.coerce(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(ring, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &FieldElement)> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GlobalDegRevLex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", m.format_with(&self.ring.vars))?;
            } else {
                write!(f, "{mag}*{}", m.format_with(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        /// Panics if the operands live in different rings; see the `try_` variant.
        impl $tr for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-&self.context().one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl ScalarRing for Arc<PolyRing> {
    type Elem = Polynomial;
    fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }
    fn one(&self) -> Polynomial {
        Polynomial::one(self)
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a + b
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }
    fn embed(&self, c: &FieldElement) -> Polynomial {
        Polynomial::constant(self, c.clone())
    }
}

/// (df/dx_1, ..., df/dx_n).
pub fn gradient(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.nvars()).map(|i| f.partial(i)).collect()
}

/// Matrix of second partials.
pub fn hessian(f: &Polynomial) -> Vec<Vec<Polynomial>> {
    let g = gradient(f);
    jacobian_matrix(&g)
}

pub fn jacobian_matrix(fs: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    fs.iter()
        .map(|f| (0..f.nvars()).map(|j| f.partial(j)).collect())
        .collect()
}

/// det(df_i/dx_j).
pub fn jacobian_det(fs: &[Polynomial]) -> Result<Polynomial> {
    let ring = fs
        .first()
        .map(|f| f.ring().clone())
        .ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    if fs.len() != ring.nvars() {
        return Err(Error::InvalidInput(format!(
            "{} equations in {} variables",
            fs.len(),
            ring.nvars()
        )));
    }
    determinant(&ring, &jacobian_matrix(fs))
}

/// Determinant of a square polynomial matrix: cofactor expansion up to 4x4,
/// fraction-free Bareiss elimination beyond.
pub fn determinant(ring: &Arc<PolyRing>, m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n <= 4 {
        Ok(cofactor_det(ring, m))
    } else {
        bareiss_det(ring, m)
    }
}

fn cofactor_det(ring: &Arc<PolyRing>, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    match n {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &cofactor_det(ring, &minor);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

pub(crate) fn bareiss_det(ring: &Arc<PolyRing>, m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    let mut a: Vec<Vec<Polynomial>> = m.to_vec();
    let mut prev = Polynomial::one(ring);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(ring)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Telescoping splitting f_i - f_i(0) = sum_j a_ij x_j with
/// a_ij = [f_i(x_1..x_j, 0..) - f_i(x_1..x_{j-1}, 0..)] / x_j.
pub fn linear_splitting(fs: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    split_by(fs, |m| m.exps().iter().rposition(|&e| e > 0))
}

/// The telescoping splitting taken in the reversed variable order x_n, ..., x_1.
pub fn linear_splitting_reversed(fs: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    split_by(fs, |m| m.exps().iter().position(|&e| e > 0))
}

fn split_by(fs: &[Polynomial], slot: impl Fn(&Monomial) -> Option<usize>) -> Vec<Vec<Polynomial>> {
    fs.iter()
        .map(|f| {
            let n = f.nvars();
            let mut row = vec![Polynomial::zero(f.ring()); n];
            for (m, c) in f.terms() {
                if let Some(j) = slot(m) {
                    let q = m.div(&Monomial::var(n, j)).expect("x_j divides the term");
                    row[j].add_term(q, c);
                }
            }
            row
        })
        .collect()
}

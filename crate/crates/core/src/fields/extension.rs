use std::fmt;

use super::univariate::UniPoly;
use super::{FieldContext, FieldElement, ScalarRing};
use crate::error::{Error, Result};

/// k[t]/(m(t)) for a monic modulus m. Normally m is irreducible and this is
/// a field; `etale_algebra` also admits squarefree moduli (products of fields).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleExtension {
    base: FieldContext,
    var: String,
    modulus: UniPoly,
    is_field: bool,
}

/// Residue of degree below the extension degree, stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    coeffs: Vec<FieldElement>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The element as a base-field scalar, if it lies in the base field.
    pub fn base_value(&self) -> Option<FieldElement> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl SimpleExtension {
    /// Builds a field extension; the modulus is made monic and checked for
    /// irreducibility (degree <= 4 over QQ, any degree over F_p).
    pub fn new(base: FieldContext, var: &str, modulus: UniPoly) -> Result<Self> {
        let modulus = Self::prepare(base, modulus)?;
        modulus.check_irreducible()?;
        Ok(SimpleExtension {
            base,
            var: var.to_string(),
            modulus,
            is_field: true,
        })
    }

    /// Like `new`, but the caller promises irreducibility when it cannot be
    /// verified (degree > 4 over QQ). Reducibility that is detected still fails.
    pub fn new_promised_irreducible(
        base: FieldContext,
        var: &str,
        modulus: UniPoly,
    ) -> Result<Self> {
        let modulus = Self::prepare(base, modulus)?;
        match modulus.check_irreducible() {
            Ok(()) | Err(Error::IrreducibilityUnverified(_)) => {}
            Err(e) => return Err(e),
        }
        if !modulus.is_squarefree() {
            return Err(Error::Reducible(modulus.to_string()));
        }
        Ok(SimpleExtension {
            base,
            var: var.to_string(),
            modulus,
            is_field: true,
        })
    }

    /// k[t]/(m) for squarefree m: a finite etale algebra, possibly a product of fields.
    pub fn etale_algebra(base: FieldContext, var: &str, modulus: UniPoly) -> Result<Self> {
        let modulus = Self::prepare(base, modulus)?;
        if !modulus.is_squarefree() {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus} is not squarefree"
            )));
        }
        let is_field = modulus.check_irreducible().is_ok();
        Ok(SimpleExtension {
            base,
            var: var.to_string(),
            modulus,
            is_field,
        })
    }

    fn prepare(base: FieldContext, modulus: UniPoly) -> Result<UniPoly> {
        if !base.is_compatible(&modulus.context()) {
            return Err(Error::ContextMismatch(format!(
                "modulus over {} used for an extension of {}",
                modulus.context(),
                base
            )));
        }
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput(
                "extension modulus must be nonconstant".into(),
            ));
        }
        Ok(UniPoly::new(base, modulus.coeffs().to_vec()).monic())
    }

    pub fn base(&self) -> FieldContext {
        self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }

    /// Reduces a univariate polynomial in the generator.
    pub fn element(&self, p: &UniPoly) -> ExtElement {
        let r = p.rem(&self.modulus);
        let d = self.degree();
        ExtElement {
            coeffs: (0..d).map(|i| r.coeff(i)).collect(),
        }
    }

    pub fn from_base(&self, c: &FieldElement) -> ExtElement {
        let mut coeffs = vec![self.base.zero(); self.degree()];
        coeffs[0] = c.clone();
        ExtElement { coeffs }
    }

    pub fn generator(&self) -> ExtElement {
        self.element(&UniPoly::var(self.base))
    }

    pub fn to_unipoly(&self, e: &ExtElement) -> UniPoly {
        UniPoly::new(self.base, e.coeffs.clone())
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement, a: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: a.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.element(&self.to_unipoly(a).mul(&self.to_unipoly(b)))
    }

    pub fn pow(&self, a: &ExtElement, mut e: u64) -> ExtElement {
        let mut base = a.clone();
        let mut acc = self.from_base(&self.base.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &ExtElement) -> Result<ExtElement> {
        let ctx = self.base;
        let (mut r0, mut r1) = (self.modulus.clone(), self.to_unipoly(a));
        let (mut s0, mut s1) = (UniPoly::zero(ctx), UniPoly::constant(ctx, ctx.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        let c = r0.coeff(0).inv()?;
        Ok(self.element(&s0.scale(&c)))
    }

    /// Matrix of multiplication by `e` in the power basis; column j holds e * t^j.
    pub fn multiplication_matrix(&self, e: &ExtElement) -> Vec<Vec<FieldElement>> {
        let d = self.degree();
        let t = self.generator();
        let mut col = e.clone();
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push(col.coeffs.clone());
            col = self.mul(&col, &t);
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Trace of multiplication by `e` over the base field.
    pub fn ext_trace(&self, e: &ExtElement) -> FieldElement {
        let m = self.multiplication_matrix(e);
        (0..self.degree()).fold(self.base.zero(), |acc, i| &acc + &m[i][i])
    }

    pub fn display(&self, e: &ExtElement) -> String {
        self.to_unipoly(e).to_string().replace('t', &self.var)
    }
}

impl fmt::Display for SimpleExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]/({})",
            self.base,
            self.var,
            self.modulus.to_string().replace('t', &self.var)
        )
    }
}

impl ScalarRing for SimpleExtension {
    type Elem = ExtElement;
    fn zero(&self) -> ExtElement {
        self.from_base(&self.base.zero())
    }
    fn one(&self) -> ExtElement {
        self.from_base(&self.base.one())
    }
    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        SimpleExtension::add(self, a, b)
    }
    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        SimpleExtension::mul(self, a, b)
    }
    fn embed(&self, c: &FieldElement) -> ExtElement {
        self.from_base(c)
    }
}

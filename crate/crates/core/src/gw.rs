//! Symmetric bilinear forms and their classes in the Grothendieck-Witt group.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fields::arith::{factorize, smallest_non_residue};
use crate::fields::{
    hilbert_symbol, reduce_square_class, ExtElement, FieldContext, FieldElement, Place,
    SimpleExtension, SquareClass,
};

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    context: FieldContext,
    gram: Vec<Vec<FieldElement>>,
}

impl SymmetricForm {
    pub fn new(context: FieldContext, gram: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("Gram matrix is not square".into()));
        }
        let gram: Vec<Vec<FieldElement>> = gram
            .iter()
            .map(|row| row.iter().map(|a| context.coerce(a)).collect())
            .collect::<Result<_>>()?;
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(SymmetricForm { context, gram })
    }

    pub fn from_i64(context: FieldContext, rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            context,
            rows.iter()
                .map(|r| r.iter().map(|&a| context.from_i64(a)).collect())
                .collect(),
        )
    }

    /// The diagonal form <d_1, ..., d_r>.
    pub fn diagonal(context: FieldContext, entries: &[FieldElement]) -> Result<Self> {
        let n = entries.len();
        let mut gram = vec![vec![context.zero(); n]; n];
        for (i, d) in entries.iter().enumerate() {
            gram[i][i] = context.coerce(d)?;
        }
        Ok(SymmetricForm { context, gram })
    }

    pub fn diagonal_i64(context: FieldContext, entries: &[i64]) -> Self {
        let e: Vec<FieldElement> = entries.iter().map(|&a| context.from_i64(a)).collect();
        Self::diagonal(context, &e).expect("integers live in every context")
    }

    /// The hyperbolic plane [[0,1],[1,0]].
    pub fn hyperbolic(context: FieldContext) -> Self {
        let (z, o) = (context.zero(), context.one());
        SymmetricForm {
            context,
            gram: vec![vec![z.clone(), o.clone()], vec![o, z]],
        }
    }

    /// `m` hyperbolic planes plus a diagonal part.
    pub fn hyperbolic_sum(context: FieldContext, m: usize, diag: &[FieldElement]) -> Result<Self> {
        let mut q = Self::diagonal(context, diag)?;
        for _ in 0..m {
            q = Self::hyperbolic(context).direct_sum(&q)?;
        }
        Ok(q)
    }

    pub fn zero_form(context: FieldContext) -> Self {
        SymmetricForm {
            context,
            gram: Vec::new(),
        }
    }

    pub fn context(&self) -> FieldContext {
        self.context
    }

    pub fn gram(&self) -> &[Vec<FieldElement>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> FieldElement {
        matrix_det(self.context, &self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn direct_sum(&self, other: &SymmetricForm) -> Result<SymmetricForm> {
        if self.context != other.context {
            return Err(Error::ContextMismatch(format!(
                "forms over {} and {}",
                self.context, other.context
            )));
        }
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![self.context.zero(); a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                gram[a + i][a + j] = other.gram[i][j].clone();
            }
        }
        Ok(SymmetricForm {
            context: self.context,
            gram,
        })
    }

    /// The same Gram matrix read in another (arithmetic-compatible) context,
    /// e.g. a form over QQ handed to the RR or Q_p classifier.
    pub fn with_context(&self, context: FieldContext) -> Result<SymmetricForm> {
        Self::new(context, self.gram.clone())
    }

    /// `P^T G P` for the permutation sending basis vector `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SymmetricForm {
        let gram = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect();
        SymmetricForm {
            context: self.context,
            gram,
        }
    }

    /// `c * G`.
    pub fn scaled(&self, c: &FieldElement) -> SymmetricForm {
        SymmetricForm {
            context: self.context,
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
    }
}

impl fmt::Display for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Determinant by Gaussian elimination over the field.
pub fn matrix_det(ctx: FieldContext, m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let mut det = ctx.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return ctx.zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det = &det * &a[k][k];
        let inv = a[k][k].inv().expect("nonzero pivot");
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] * &inv;
            for c in k..n {
                let delta = &factor * &a[k][c];
                a[r][c] = &a[r][c] - &delta;
            }
        }
    }
    det
}

/// Matrix rank over the field.
pub fn matrix_rank(m: &[Vec<FieldElement>]) -> usize {
    let mut a: Vec<Vec<FieldElement>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let inv = a[rank][c].inv().expect("nonzero pivot");
        for r in 0..rows {
            if r == rank || a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] * &inv;
            for k in c..cols {
                let delta = &factor * &a[rank][k];
                a[r][k] = &a[r][k] - &delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Congruence diagonalization: returns `d` with `q` isometric to `<d_1, ..., d_r>`.
pub fn diagonalize(q: &SymmetricForm) -> Result<Vec<FieldElement>> {
    if q.context.is_char2() {
        return Err(Error::Char2Unsupported);
    }
    let n = q.rank();
    let mut a = q.gram.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_basis(&mut a, i, k);
            } else {
                // All remaining diagonal entries vanish: replace e_k by e_k + e_j
                // for some j with a_kj != 0, giving the diagonal entry 2 a_kj.
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = pair else {
                    return Err(Error::DegenerateForm);
                };
                add_basis(&mut a, i, j);
                swap_basis(&mut a, i, k);
            }
        }
        let inv = a[k][k].inv()?;
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] * &inv;
            for c in k..n {
                let delta = &factor * &a[k][c];
                a[r][c] = &a[r][c] - &delta;
            }
            for c in k..n {
                let delta = &factor * &a[c][k];
                a[c][r] = &a[c][r] - &delta;
            }
        }
        out.push(a[k][k].clone());
    }
    Ok(out)
}

fn swap_basis(a: &mut [Vec<FieldElement>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// e_i := e_i + e_j.
fn add_basis(a: &mut [Vec<FieldElement>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = &a[i][c] + &a[j][c];
        a[i][c] = v;
    }
    for r in 0..n {
        let v = &a[r][i] + &a[r][j];
        a[r][i] = v;
    }
}

/// Complete invariants of a form in GW(k) for the supported field classifiers.
#[derive(Clone, Debug)]
pub struct GWClass {
    context: FieldContext,
    rank: usize,
    disc: Option<SquareClass>,
    signature: Option<i64>,
    hasse: BTreeMap<Place, i8>,
    // Hyperbolic planes split off before diagonalizing, and the diagonal of the rest.
    planes: usize,
    diagonal: Vec<SquareClass>,
}

pub fn invariants(q: &SymmetricForm) -> Result<GWClass> {
    let ctx = q.context;
    if ctx.is_char2() {
        if !q.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        return Ok(GWClass {
            context: ctx,
            rank: q.rank(),
            disc: None,
            signature: None,
            hasse: BTreeMap::new(),
            planes: 0,
            diagonal: Vec::new(),
        });
    }
    if !q.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    // Isotropic basis planes first, so the presentation sees them as H.
    let (planes, rest) = split_isotropic_planes(ctx, &q.gram);
    let rest_classes: Vec<SquareClass> = diagonalize(&SymmetricForm {
        context: ctx,
        gram: rest,
    })?
    .iter()
    .map(|a| reduce_square_class(ctx, a))
    .collect::<Result<_>>()?;
    let mut classes = rest_classes.clone();
    for _ in 0..planes {
        classes.push(SquareClass::one(ctx));
        classes.push(SquareClass::minus_one(ctx));
    }
    let disc = classes
        .iter()
        .fold(SquareClass::one(ctx), |acc, c| acc.mul(c));
    let signature = match ctx {
        FieldContext::Rationals | FieldContext::RealClassifier => Some(
            classes
                .iter()
                .map(|c| {
                    if c.representative().is_negative() {
                        -1
                    } else {
                        1
                    }
                })
                .sum(),
        ),
        _ => None,
    };
    let places: Vec<Place> = match ctx {
        FieldContext::Rationals => {
            let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
            for c in &classes {
                for (p, _) in factorize(&c.representative().abs().to_biguint().unwrap()) {
                    let p = p.to_u64().ok_or_else(|| {
                        Error::InvalidInput(format!("prime {p} exceeds the supported range"))
                    })?;
                    primes.insert(p);
                }
            }
            std::iter::once(Place::Infinity)
                .chain(primes.into_iter().map(Place::Prime))
                .collect()
        }
        FieldContext::PadicClassifier(p) => vec![Place::Prime(p)],
        _ => Vec::new(),
    };
    let mut hasse = BTreeMap::new();
    for place in places {
        hasse.insert(place, hasse_invariant(&classes, place)?);
    }
    Ok(GWClass {
        context: ctx,
        rank: q.rank(),
        disc: Some(disc),
        signature,
        hasse,
        planes,
        diagonal: rest_classes,
    })
}

fn hasse_invariant(classes: &[SquareClass], place: Place) -> Result<i8> {
    let reps: Vec<num_rational::BigRational> = classes
        .iter()
        .map(|c| num_rational::BigRational::from_integer(c.representative().clone()))
        .collect();
    let mut eps = 1i8;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            eps *= hilbert_symbol(&reps[i], &reps[j], place)?;
        }
    }
    Ok(eps)
}

impl GWClass {
    pub fn context(&self) -> FieldContext {
        self.context
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Class of the Gram determinant; `None` in characteristic 2.
    pub fn disc(&self) -> Option<&SquareClass> {
        self.disc.as_ref()
    }

    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    pub fn hasse(&self) -> &BTreeMap<Place, i8> {
        &self.hasse
    }

    pub fn hasse_at(&self, place: Place) -> i8 {
        self.hasse.get(&place).copied().unwrap_or(1)
    }

    pub fn is_char2(&self) -> bool {
        self.context.is_char2()
    }

    /// The first invariant on which two classes differ, as
    /// `"name: mine vs theirs"`; `None` when the classes are equal.
    pub fn first_difference(&self, other: &GWClass) -> Result<Option<String>> {
        if self.context != other.context {
            return Err(Error::ContextMismatch(format!(
                "classes over {} and {}",
                self.context, other.context
            )));
        }
        if self.rank != other.rank {
            return Ok(Some(format!("rank: {} vs {}", self.rank, other.rank)));
        }
        if self.is_char2() {
            return Ok(None);
        }
        let signature_diff = || {
            (self.signature != other.signature).then(|| {
                format!(
                    "signature: {} vs {}",
                    self.signature.unwrap_or(0),
                    other.signature.unwrap_or(0)
                )
            })
        };
        if matches!(self.context, FieldContext::RealClassifier) {
            return Ok(signature_diff());
        }
        if self.disc != other.disc {
            return Ok(Some(format!(
                "disc: {} vs {}",
                self.disc.as_ref().unwrap(),
                other.disc.as_ref().unwrap()
            )));
        }
        if let Some(d) = signature_diff() {
            return Ok(Some(d));
        }
        let places: BTreeSet<Place> = self
            .hasse
            .keys()
            .chain(other.hasse.keys())
            .copied()
            .collect();
        for place in places {
            let (a, b) = (self.hasse_at(place), other.hasse_at(place));
            if a != b {
                return Ok(Some(format!("hasse at {place}: {a} vs {b}")));
            }
        }
        Ok(None)
    }

    pub fn equals(&self, other: &GWClass) -> Result<bool> {
        Ok(self.first_difference(other)?.is_none())
    }

    /// A presentation `m*H + <d_1, ...>`.
    pub fn presentation(&self) -> Result<Presentation> {
        let ctx = self.context;
        let r = self.rank;
        let class = |n: i64| reduce_square_class(ctx, &ctx.from_i64(n)).expect("nonzero");
        match ctx {
            _ if ctx.is_char2() => Err(Error::Char2Unsupported),
            FieldContext::RealClassifier => {
                let s = self.signature.unwrap();
                let pos = (r as i64 + s) / 2;
                let neg = r as i64 - pos;
                let m = pos.min(neg) as usize;
                let sign = if s > 0 { 1 } else { -1 };
                Ok(Presentation {
                    context: ctx,
                    h_multiplicity: m,
                    residual: vec![class(sign); s.unsigned_abs() as usize],
                })
            }
            FieldContext::PrimeField(_) => {
                let d = self.disc.clone().unwrap();
                let minus_one = SquareClass::minus_one(ctx);
                let sign_pow = |m: usize| {
                    if m.is_multiple_of(2) {
                        SquareClass::one(ctx)
                    } else {
                        minus_one.clone()
                    }
                };
                if r == 0 {
                    return Ok(Presentation::empty(ctx));
                }
                let (m, residual) = if r % 2 == 1 {
                    let m = (r - 1) / 2;
                    (m, vec![d.mul(&sign_pow(m))])
                } else if d == sign_pow(r / 2) {
                    (r / 2, Vec::new())
                } else {
                    let m = r / 2 - 1;
                    (m, vec![SquareClass::one(ctx), d.mul(&sign_pow(m))])
                };
                Ok(Presentation {
                    context: ctx,
                    h_multiplicity: m,
                    residual,
                })
            }
            _ => Ok(self.widen(greedy_pairing(ctx, self.planes, self.diagonal.clone()))),
        }
    }

    /// Over QQ and Qp the greedy pairing can miss planes. Tries larger `m`
    /// with a residual of rank at most 2 built from small square classes,
    /// keeping a candidate only when its invariants match.
    fn widen(&self, greedy: Presentation) -> Presentation {
        let ctx = self.context;
        let Some(disc) = &self.disc else {
            return greedy;
        };
        let mut ints: Vec<i64> = (1..=30).collect();
        for place in self.hasse.keys() {
            if let Place::Prime(p) = *place {
                let u = if p == 2 { 5 } else { smallest_non_residue(p) };
                ints.extend([p as i64, (u * p) as i64, u as i64]);
            }
        }
        let mut values: Vec<SquareClass> = Vec::new();
        for n in ints.into_iter().flat_map(|n| [n, -n]) {
            let c = reduce_square_class(ctx, &ctx.from_i64(n)).expect("nonzero");
            if !values.contains(&c) {
                values.push(c);
            }
        }
        let minus_one = SquareClass::minus_one(ctx);
        for m in (greedy.h_multiplicity + 1..=self.rank / 2).rev() {
            let d = if m % 2 == 0 {
                disc.clone()
            } else {
                disc.mul(&minus_one)
            };
            let candidates: Vec<Vec<SquareClass>> = match self.rank - 2 * m {
                0 => vec![vec![]],
                1 => vec![vec![d]],
                2 => values.iter().map(|a| vec![a.clone(), a.mul(&d)]).collect(),
                _ => vec![],
            };
            for mut residual in candidates {
                residual.sort_by(|a, b| a.representative().cmp(b.representative()));
                let p = Presentation {
                    context: ctx,
                    h_multiplicity: m,
                    residual,
                };
                if invariants(&p.to_form())
                    .and_then(|c| c.equals(self))
                    .unwrap_or(false)
                {
                    return p;
                }
            }
        }
        greedy
    }

    pub fn to_json(&self) -> Value {
        let mut hasse = Map::new();
        for (place, s) in &self.hasse {
            hasse.insert(place.to_string(), json!(s));
        }
        json!({
            "rank": self.rank,
            "disc": self.disc.as_ref().map(|d| d.to_string()),
            "signature": self.signature,
            "hasse": hasse,
            "presentation": self
                .presentation()
                .map(|p| p.to_string())
                .unwrap_or_else(|_| format!("rank {}", self.rank)),
        })
    }
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.presentation() {
            Ok(p) => write!(f, "{p}"),
            Err(_) => write!(f, "rank {}", self.rank),
        }
    }
}

/// `m` hyperbolic planes plus a residual diagonal of square classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    context: FieldContext,
    h_multiplicity: usize,
    residual: Vec<SquareClass>,
}

impl Presentation {
    fn empty(context: FieldContext) -> Self {
        Presentation {
            context,
            h_multiplicity: 0,
            residual: Vec::new(),
        }
    }

    pub fn h_multiplicity(&self) -> usize {
        self.h_multiplicity
    }

    pub fn residual(&self) -> &[SquareClass] {
        &self.residual
    }

    pub fn rank(&self) -> usize {
        2 * self.h_multiplicity + self.residual.len()
    }

    /// Rebuilds a form with this presentation.
    pub fn to_form(&self) -> SymmetricForm {
        let diag: Vec<FieldElement> = self.residual.iter().map(|c| c.to_element()).collect();
        SymmetricForm::hyperbolic_sum(self.context, self.h_multiplicity, &diag)
            .expect("classes live in their own context")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let diag = if self.residual.is_empty() {
            None
        } else {
            let parts: Vec<String> = self.residual.iter().map(|c| c.to_string()).collect();
            Some(format!("<{}>", parts.join(",")))
        };
        match (self.h_multiplicity, diag) {
            (0, None) => write!(f, "0"),
            (0, Some(d)) => write!(f, "{d}"),
            (m, None) => write!(f, "{m}*H"),
            (m, Some(d)) => write!(f, "{m}*H + {d}"),
        }
    }
}

/// Pairs off diagonal entries `a, b` with `ab = -1` in the square-class
/// group, each pair being a hyperbolic plane.
fn greedy_pairing(ctx: FieldContext, mut m: usize, mut classes: Vec<SquareClass>) -> Presentation {
    let minus_one = SquareClass::minus_one(ctx);
    let mut residual = Vec::new();
    while let Some(a) = classes.pop() {
        match classes.iter().rposition(|b| a.mul(b) == minus_one) {
            Some(k) => {
                classes.remove(k);
                m += 1;
            }
            None => residual.push(a),
        }
    }
    residual.sort_by(|a, b| a.representative().cmp(b.representative()));
    Presentation {
        context: ctx,
        h_multiplicity: m,
        residual,
    }
}

/// Splits off hyperbolic planes spanned by isotropic basis vectors: if
/// `G_ii = 0` and `G_ij = c != 0`, then `e_i, e_j` span a copy of H and the
/// remaining basis vectors are projected onto its orthogonal complement.
fn split_isotropic_planes(
    ctx: FieldContext,
    gram: &[Vec<FieldElement>],
) -> (usize, Vec<Vec<FieldElement>>) {
    let mut g = gram.to_vec();
    let mut m = 0;
    loop {
        let n = g.len();
        let found = (0..n).filter(|&i| g[i][i].is_zero()).find_map(|i| {
            (0..n)
                .find(|&j| j != i && !g[i][j].is_zero())
                .map(|j| (i, j))
        });
        let Some((i, j)) = found else {
            return (m, g);
        };
        let c_inv = g[i][j].inv().expect("nonzero");
        let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        // v_k' = e_k - alpha_k e_i - beta_k e_j.
        let coeffs: Vec<(FieldElement, FieldElement)> = rest
            .iter()
            .map(|&k| {
                let beta = &g[k][i] * &c_inv;
                let alpha = &(&g[k][j] - &(&beta * &g[j][j])) * &c_inv;
                (alpha, beta)
            })
            .collect();
        let mut next = vec![vec![ctx.zero(); rest.len()]; rest.len()];
        for (a, &k) in rest.iter().enumerate() {
            for (b, &l) in rest.iter().enumerate() {
                let (alpha, beta) = &coeffs[b];
                next[a][b] = &(&g[k][l] - &(alpha * &g[k][i])) - &(beta * &g[k][j]);
            }
        }
        g = next;
        m += 1;
    }
}

/// Presentation of a form. Over F_p and RR it is the canonical one with the
/// largest possible number of hyperbolic planes; over QQ and Q_p it comes
/// from splitting off isotropic basis planes followed by greedy pairing of
/// the diagonalization, which is class-correct but not always maximal.
pub fn present(q: &SymmetricForm) -> Result<Presentation> {
    if q.context.is_char2() {
        return Err(Error::Char2Unsupported);
    }
    invariants(q)?.presentation()
}

pub fn equals(q1: &SymmetricForm, q2: &SymmetricForm) -> Result<bool> {
    if q1.context != q2.context {
        return Err(Error::ContextMismatch(format!(
            "forms over {} and {}",
            q1.context, q2.context
        )));
    }
    invariants(q1)?.equals(&invariants(q2)?)
}

/// Equality after adding hyperbolic planes to the smaller form.
pub fn stable_equals(q1: &SymmetricForm, q2: &SymmetricForm) -> Result<bool> {
    let (r1, r2) = (q1.rank(), q2.rank());
    if r1.abs_diff(r2) % 2 == 1 {
        return Err(Error::RankParityMismatch(r1, r2));
    }
    let pad = |q: &SymmetricForm, k: usize| {
        SymmetricForm::hyperbolic_sum(q.context, k, &[])?.direct_sum(q)
    };
    if r1 < r2 {
        equals(&pad(q1, (r2 - r1) / 2)?, q2)
    } else {
        equals(q1, &pad(q2, (r1 - r2) / 2)?)
    }
}

/// The transfer `Tr_{L/k} <w>`: Gram matrix `Tr(w t^i t^j)` on the power basis.
pub fn trace_form(l: &SimpleExtension, w: &ExtElement) -> Result<SymmetricForm> {
    if w.is_zero() {
        return Err(Error::ZeroElement);
    }
    let d = l.degree();
    let ctx = l.base();
    let t = l.generator();
    let mut powers = vec![l.from_base(&ctx.one())];
    for _ in 1..(2 * d).max(1) {
        powers.push(l.mul(powers.last().unwrap(), &t));
    }
    let traces: Vec<FieldElement> = powers.iter().map(|p| l.ext_trace(&l.mul(w, p))).collect();
    let gram = (0..d)
        .map(|i| (0..d).map(|j| traces[i + j].clone()).collect())
        .collect();
    SymmetricForm::new(ctx, gram)
}

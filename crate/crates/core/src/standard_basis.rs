//! Standard bases in the localization at the origin (Mora's tangent-cone
//! algorithm), the staircase basis of the local algebra, and exact normal forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

const ORDER: MonomialOrder = MonomialOrder::LocalDegRevLex;

/// Tuning knobs for [`standard_basis_with`].
#[derive(Clone, Debug)]
pub struct StandardBasisOptions {
    /// Maximum number of elementary reduction steps over the whole run.
    pub step_limit: usize,
    /// Skip S-pairs by the coprime-leading-monomial and chain criteria.
    pub use_criteria: bool,
}

impl Default for StandardBasisOptions {
    fn default() -> Self {
        StandardBasisOptions {
            step_limit: 1_000_000,
            use_criteria: true,
        }
    }
}

/// Counters collected while building a standard basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisStats {
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
    pub reduction_steps: usize,
}

fn ecart(f: &Polynomial) -> u32 {
    let lm = f.leading_monomial(ORDER).expect("nonzero");
    f.total_degree().unwrap() - lm.degree()
}

fn leading(f: &Polynomial) -> (Monomial, FieldElement) {
    let (m, c) = f.leading_term(ORDER).expect("nonzero");
    (m.clone(), c.clone())
}

fn monic(f: &Polynomial) -> Result<Polynomial> {
    let (_, c) = leading(f);
    Ok(f.scale(&c.inv()?))
}

struct Reducer {
    poly: Polynomial,
    lm: Monomial,
    lc_inv: FieldElement,
    ecart: u32,
}

impl Reducer {
    fn new(poly: Polynomial) -> Result<Self> {
        let (lm, lc) = leading(&poly);
        Ok(Reducer {
            ecart: ecart(&poly),
            lc_inv: lc.inv()?,
            lm,
            poly,
        })
    }
}

fn mora_reduce(
    h: &Polynomial,
    g: &[Polynomial],
    steps: &mut usize,
    limit: usize,
) -> Result<Polynomial> {
    let mut t: Vec<Reducer> = g
        .iter()
        .map(|p| Reducer::new(p.clone()))
        .collect::<Result<_>>()?;
    let mut r = h.clone();
    while !r.is_zero() {
        let (lm, lc) = leading(&r);
        let best = t
            .iter()
            .enumerate()
            .filter(|(_, red)| red.lm.divides(&lm))
            .min_by_key(|(k, red)| (red.ecart, *k))
            .map(|(k, _)| k);
        let Some(k) = best else { break };
        *steps += 1;
        if *steps > limit {
            return Err(Error::StepLimitExceeded(limit));
        }
        let r_ecart = ecart(&r);
        if t[k].ecart > r_ecart {
            t.push(Reducer::new(r.clone())?);
        }
        let red = &t[k];
        let shift = lm.div(&red.lm).expect("divisor checked");
        let coef = -(&lc * &red.lc_inv);
        let mut next = r.clone();
        next.add_scaled_shifted(&coef, &shift, &red.poly);
        r = next;
    }
    Ok(r)
}

/// Mora's weak normal form: returns `r` with `u*h = r mod (G)` for a unit `u`
/// of the local ring and no term of `r`'s leading monomial divisible by a
/// leading monomial of `G`.
pub fn mora_normal_form(h: &Polynomial, g: &[Polynomial]) -> Result<Polynomial> {
    let mut steps = 0;
    mora_reduce(h, g, &mut steps, StandardBasisOptions::default().step_limit)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = leading(f);
    let (mg, cg) = leading(g);
    let l = mf.lcm(&mg);
    let a = f.mul_term(&l.div(&mf).unwrap(), &cg);
    let b = g.mul_term(&l.div(&mg).unwrap(), &cf);
    &a - &b
}

/// The local algebra Q_0(f) = O_0 / (f_1, ..., f_n) at the origin.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    leading_ideal: Vec<Monomial>,
    staircase: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    truncation: u32,
    stats: BasisStats,
}

/// Standard basis with default options.
pub fn standard_basis(f: &[Polynomial]) -> Result<LocalAlgebra> {
    standard_basis_with(f, &StandardBasisOptions::default())
}

pub fn standard_basis_with(f: &[Polynomial], opts: &StandardBasisOptions) -> Result<LocalAlgebra> {
    let ring = f
        .first()
        .map(|p| p.ring().clone())
        .ok_or(Error::ZeroIdealInput)?;
    for p in f {
        if p.ring() != &ring {
            return Err(Error::ContextMismatch(
                "generators over different rings".into(),
            ));
        }
    }
    let mut g: Vec<Polynomial> = f
        .iter()
        .filter(|p| !p.is_zero())
        .map(monic)
        .collect::<Result<_>>()?;
    if g.is_empty() {
        return Err(Error::ZeroIdealInput);
    }
    let mut stats = BasisStats::default();
    let mut steps = 0usize;

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let lms = |g: &[Polynomial], i: usize| leading(&g[i]).0;
    while !pending.is_empty() {
        // Normal strategy: smallest lcm degree first, then pair indices.
        let &(i, j) = pending
            .iter()
            .min_by_key(|&&(i, j)| (lms(&g, i).lcm(&lms(&g, j)).degree(), j, i))
            .unwrap();
        pending.remove(&(i, j));
        let (mi, mj) = (lms(&g, i), lms(&g, j));
        if opts.use_criteria {
            let l = mi.lcm(&mj);
            let coprime = mi.is_coprime(&mj);
            let chain = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && lms(&g, k).divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if coprime || chain {
                stats.pairs_skipped += 1;
                continue;
            }
        }
        stats.pairs_reduced += 1;
        let s = s_polynomial(&g[i], &g[j]);
        let r = mora_reduce(&s, &g, &mut steps, opts.step_limit)?;
        if !r.is_zero() {
            let r = monic(&r)?;
            let new = g.len();
            for k in 0..new {
                pending.insert((k, new));
            }
            g.push(r);
        }
    }
    stats.reduction_steps = steps;

    // Drop elements whose leading monomial is a multiple of an earlier-kept one.
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| {
        let (ma, mb) = (lms(&g, a), lms(&g, b));
        ma.degree().cmp(&mb.degree()).then(a.cmp(&b))
    });
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leading_ideal: Vec<Monomial> = Vec::new();
    for k in order {
        let m = lms(&g, k);
        if leading_ideal.iter().any(|l| l.divides(&m)) {
            continue;
        }
        leading_ideal.push(m);
        basis.push(g[k].clone());
    }

    let n = ring.nvars();
    for i in 0..n {
        let has_power = leading_ideal
            .iter()
            .any(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if !has_power {
            return Err(Error::NotIsolatedZero {
                variable: ring.vars()[i].clone(),
            });
        }
    }

    let staircase = enumerate_staircase(n, &leading_ideal);
    let truncation = staircase.iter().map(|m| m.degree() + 1).max().unwrap_or(0);
    let index = staircase
        .iter()
        .enumerate()
        .map(|(k, m)| (m.clone(), k))
        .collect();
    Ok(LocalAlgebra {
        ring,
        generators: f.to_vec(),
        basis,
        leading_ideal,
        staircase,
        index,
        truncation,
        stats,
    })
}

/// Monomials outside the leading ideal, sorted from largest to smallest in
/// the local order (so `1` comes first).
fn enumerate_staircase(n: usize, leading_ideal: &[Monomial]) -> Vec<Monomial> {
    let inside = |m: &Monomial| leading_ideal.iter().any(|l| l.divides(m));
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(n)];
    while let Some(m) = frontier.pop() {
        if inside(&m) || !seen.insert(m.clone()) {
            continue;
        }
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(n, i)));
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| ORDER.cmp(b, a));
    out
}

/// Wrapper ordering monomials by the local order, so a `BTreeMap` pops the
/// leading term last.
#[derive(Clone, PartialEq, Eq)]
struct LocalKey(Monomial);

impl Ord for LocalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        ORDER.cmp(&self.0, &other.0)
    }
}

impl PartialOrd for LocalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Leading monomial, inverse leading coefficient and truncated tail.
type TruncatedReducer = (Monomial, FieldElement, Vec<(Monomial, FieldElement)>);

impl LocalAlgebra {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The standard basis (minimal: no leading monomial divides another).
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_ideal(&self) -> &[Monomial] {
        &self.leading_ideal
    }

    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    pub fn dimension(&self) -> usize {
        self.staircase.len()
    }

    pub fn stats(&self) -> &BasisStats {
        &self.stats
    }

    /// A degree `b` with m^b contained in the ideal: one more than the
    /// largest staircase degree. Every staircase monomial lies below it.
    pub fn truncation_degree(&self) -> u32 {
        self.truncation
    }

    /// Exact normal form: the unique combination of staircase monomials
    /// congruent to `h` modulo the ideal generated in the local ring.
    ///
    /// Since m^b lies in the ideal for `b = truncation_degree()`, the local
    /// algebra equals k[x]/(I + m^b); reduction there never needs units.
    pub fn normal_form(&self, h: &Polynomial) -> Result<Polynomial> {
        if h.ring() != &self.ring {
            return Err(Error::ContextMismatch(
                "polynomial outside the algebra's ring".into(),
            ));
        }
        let b = self.truncation;
        let reducers: Vec<TruncatedReducer> = self
            .basis
            .iter()
            .map(|g| {
                let (lm, lc) = leading(g);
                let tail = g
                    .terms()
                    .filter(|(m, _)| **m != lm && m.degree() < b)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect();
                Ok((lm, lc.inv()?, tail))
            })
            .collect::<Result<_>>()?;
        let mut work: BTreeMap<LocalKey, FieldElement> = h
            .terms()
            .filter(|(m, _)| m.degree() < b)
            .map(|(m, c)| (LocalKey(m.clone()), c.clone()))
            .collect();
        let mut out = Polynomial::zero(&self.ring);
        while let Some((LocalKey(m), c)) = work.pop_last() {
            let divisor = reducers.iter().find(|(lm, _, _)| lm.divides(&m));
            let Some((lm, lc_inv, tail)) = divisor else {
                out.add_term(m, &c);
                continue;
            };
            let q = m.div(lm).unwrap();
            let coef = -(&c * lc_inv);
            for (tm, tc) in tail {
                let prod = tm.mul(&q);
                if prod.degree() >= b {
                    continue;
                }
                let delta = &coef * tc;
                let key = LocalKey(prod);
                match work.get_mut(&key) {
                    Some(v) => {
                        let s = &*v + &delta;
                        if s.is_zero() {
                            work.remove(&key);
                        } else {
                            *v = s;
                        }
                    }
                    None => {
                        work.insert(key, delta);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, h: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(h)?.is_zero())
    }

    /// Coordinates of `NF(h)` in the staircase basis.
    pub fn coordinates(&self, h: &Polynomial) -> Result<Vec<FieldElement>> {
        let nf = self.normal_form(h)?;
        self.coordinates_of_reduced(&nf)
    }

    /// Coordinates of an already reduced polynomial.
    pub fn coordinates_of_reduced(&self, nf: &Polynomial) -> Result<Vec<FieldElement>> {
        let mut out = vec![self.ring.context().zero(); self.dimension()];
        for (m, c) in nf.terms() {
            let k = self.index.get(m).ok_or_else(|| {
                Error::InternalContradiction(format!("{m} is not a staircase monomial"))
            })?;
            out[*k] = c.clone();
        }
        Ok(out)
    }

    /// The polynomial with the given staircase coordinates.
    pub fn from_coordinates(&self, coords: &[FieldElement]) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.staircase
                .iter()
                .zip(coords)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn staircase_polynomial(&self, k: usize) -> Polynomial {
        Polynomial::monomial(
            &self.ring,
            self.staircase[k].clone(),
            self.ring.context().one(),
        )
    }

    /// Multiplication by `g` on the staircase basis; entry `[i][j]` is the
    /// i-th coordinate of `NF(g * B_j)`.
    pub fn multiplication_matrix(&self, g: &Polynomial) -> Result<Vec<Vec<FieldElement>>> {
        let d = self.dimension();
        let mut m = vec![vec![self.ring.context().zero(); d]; d];
        for j in 0..d {
            let col = self.coordinates(&(g * &self.staircase_polynomial(j)))?;
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Least `b >= 1` such that every monomial of degree `b` lies in the ideal.
    pub fn determinacy_order(&self) -> Result<u32> {
        let n = self.ring.nvars();
        let cap = n * (self.dimension() + 1);
        for b in 1..=cap.max(1) as u32 {
            let all_zero = Monomial::all_of_degree(n, b)
                .into_iter()
                .try_fold(true, |acc, m| {
                    if !acc {
                        return Ok::<bool, Error>(false);
                    }
                    let p = Polynomial::monomial(&self.ring, m, self.ring.context().one());
                    self.contains(&p)
                })?;
            if all_zero {
                return Ok(b);
            }
        }
        Err(Error::CapExceeded(cap))
    }
}

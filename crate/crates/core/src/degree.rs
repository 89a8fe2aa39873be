//! Local degrees at closed points, fiber sums, and the harnesses built on
//! them: arithmetic Milnor numbers, node types, conservation of the degree
//! across fibers, and obstructions to bifurcating a singularity into nodes.

use std::fmt;

use crate::ekl::ekl_class;
use crate::error::{Error, Result};
use crate::fields::univariate::UniPoly;
use crate::fields::{ExtElement, FieldContext, FieldElement, SimpleExtension};
use crate::gw::{invariants, trace_form, GWClass, SymmetricForm};
use crate::poly::{gradient, hessian, jacobian_det, Polynomial};

/// A closed point of affine space: rational, or given by coordinates in a
/// simple extension (or a finite etale algebra, for a cluster of conjugate
/// points whose factorization is not certified).
#[derive(Clone, Debug)]
pub enum ClosedPoint {
    Rational(Vec<FieldElement>),
    Extension {
        ext: SimpleExtension,
        coords: Vec<ExtElement>,
    },
}

impl ClosedPoint {
    pub fn origin(ctx: FieldContext, n: usize) -> Self {
        ClosedPoint::Rational(vec![ctx.zero(); n])
    }

    pub fn dim(&self) -> usize {
        match self {
            ClosedPoint::Rational(c) => c.len(),
            ClosedPoint::Extension { coords, .. } => coords.len(),
        }
    }

    /// Degree of the residue field (or etale algebra) over the base.
    pub fn residue_degree(&self) -> usize {
        match self {
            ClosedPoint::Rational(_) => 1,
            ClosedPoint::Extension { ext, .. } => ext.degree(),
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Rational(c) => {
                let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            ClosedPoint::Extension { ext, coords } => {
                let parts: Vec<String> = coords.iter().map(|a| ext.display(a)).collect();
                let kind = if ext.is_field() {
                    ""
                } else {
                    " (etale cluster)"
                };
                write!(
                    f,
                    "({}) where {} = 0{kind}",
                    parts.join(", "),
                    ext.modulus()
                )
            }
        }
    }
}

/// The arithmetic Milnor number: the EKL class of the gradient at the origin.
pub fn milnor_number(g: &Polynomial) -> Result<SymmetricForm> {
    let grad = gradient(g);
    let origin = vec![g.context().zero(); g.nvars()];
    for d in &grad {
        if !d.evaluate_at(&origin)?.is_zero() {
            return Err(Error::NotCriticalPoint);
        }
    }
    ekl_class(&grad, &origin, None)
}

fn check_target(
    values: &[FieldElement],
    y: Option<&[FieldElement]>,
    ctx: FieldContext,
) -> Result<()> {
    if let Some(y) = y {
        if y.len() != values.len() {
            return Err(Error::InvalidInput("target has the wrong length".into()));
        }
        for (v, t) in values.iter().zip(y) {
            if *v != ctx.coerce(t)? {
                return Err(Error::NotInFiber);
            }
        }
    }
    Ok(())
}

/// The local degree at an etale point: `Tr_{k(x)/k} <J(x)>`.
pub fn local_degree_etale(
    f: &[Polynomial],
    x: &ClosedPoint,
    y: Option<&[FieldElement]>,
) -> Result<SymmetricForm> {
    let n = f.first().map(|p| p.nvars()).ok_or(Error::ZeroIdealInput)?;
    if f.len() != n || x.dim() != n {
        return Err(Error::InvalidInput(
            "system, point and space dimensions differ".into(),
        ));
    }
    let ctx = f[0].context();
    let j = jacobian_det(f)?;
    match x {
        ClosedPoint::Rational(a) => {
            let values: Vec<FieldElement> = f
                .iter()
                .map(|fi| fi.evaluate_at(a))
                .collect::<Result<_>>()?;
            check_target(&values, y, ctx)?;
            let jx = j.evaluate_at(a)?;
            if jx.is_zero() {
                return Err(Error::NotEtale);
            }
            SymmetricForm::diagonal(ctx, &[jx])
        }
        ClosedPoint::Extension { ext, coords } => {
            let mut values = Vec::with_capacity(n);
            for fi in f {
                let v = fi.evaluate(ext, coords)?;
                values.push(v.base_value().ok_or(Error::NonRationalImage)?);
            }
            check_target(&values, y, ctx)?;
            let jx = j.evaluate(ext, coords)?;
            if ext.inv(&jx).is_err() {
                return Err(Error::NotEtale);
            }
            trace_form(ext, &jx)
        }
    }
}

/// Arithmetic type of a node of `g` at `x`: the local degree of `grad g`,
/// certified by a nonvanishing Hessian determinant.
pub fn node_arithmetic_type(g: &Polynomial, x: &ClosedPoint) -> Result<SymmetricForm> {
    if g.context().is_char2() {
        return Err(Error::Char2Unsupported);
    }
    let grad = gradient(g);
    let hdet = crate::poly::determinant(g.ring(), &hessian(g))?;
    match x {
        ClosedPoint::Rational(a) => {
            for d in &grad {
                if !d.evaluate_at(a)?.is_zero() {
                    return Err(Error::NotCriticalPoint);
                }
            }
            if hdet.evaluate_at(a)?.is_zero() {
                return Err(Error::DegenerateCriticalPoint);
            }
        }
        ClosedPoint::Extension { ext, coords } => {
            for d in &grad {
                if !d.evaluate(ext, coords)?.is_zero() {
                    return Err(Error::NotCriticalPoint);
                }
            }
            if ext.inv(&hdet.evaluate(ext, coords)?).is_err() {
                return Err(Error::DegenerateCriticalPoint);
            }
        }
    }
    let zero = vec![g.context().zero(); g.nvars()];
    local_degree_etale(&grad, x, Some(&zero))
}

/// One point of a fiber with its local contribution.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub point: ClosedPoint,
    /// Local multiplicity: dim Q_x for rational points, 1 for etale points.
    pub multiplicity: usize,
    pub form: SymmetricForm,
}

/// The fiber of `f` over `y` with the sum of local degrees.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub y: Vec<FieldElement>,
    pub points: Vec<FiberPoint>,
    pub total: SymmetricForm,
}

impl FiberReport {
    fn assemble(ctx: FieldContext, y: Vec<FieldElement>, points: Vec<FiberPoint>) -> Result<Self> {
        let mut total = SymmetricForm::zero_form(ctx);
        for p in &points {
            total = total.direct_sum(&p.form)?;
        }
        Ok(FiberReport { y, points, total })
    }

    /// Sum of residue degree times multiplicity over the fiber.
    pub fn weighted_point_count(&self) -> usize {
        self.points
            .iter()
            .map(|p| p.point.residue_degree() * p.multiplicity)
            .sum()
    }

    pub fn class(&self) -> Result<GWClass> {
        invariants(&self.total)
    }
}

/// Fiber sum of a univariate polynomial map over `y`.
pub fn fiber_sum_univariate(f: &Polynomial, y: &FieldElement) -> Result<FiberReport> {
    if f.nvars() != 1 {
        return Err(Error::InvalidInput(
            "expected a polynomial in one variable".into(),
        ));
    }
    let ctx = f.context();
    let y = ctx.coerce(y)?;
    let h = f.to_univariate(0)?.sub(&UniPoly::constant(ctx, y.clone()));
    if h.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidInput(format!(
            "{f} is constant, the map is not finite"
        )));
    }
    let fs = [f.clone()];
    let target = [y.clone()];
    let mut points = Vec::new();
    let mut rest = h.clone();
    for a in h.roots() {
        let m = rest.deflate_root(&a);
        let form = ekl_class(&fs, std::slice::from_ref(&a), Some(&target))?;
        points.push(FiberPoint {
            point: ClosedPoint::Rational(vec![a]),
            multiplicity: m,
            form,
        });
    }
    for (part, mult) in rest.squarefree_decomposition() {
        if mult != 1 {
            return Err(Error::UnresolvedFiber(format!(
                "irrational multiple points: factor {part} of {h}"
            )));
        }
        for (factor, certified) in part.split_rootless_squarefree() {
            let ext = if certified {
                SimpleExtension::new_promised_irreducible(ctx, "t", factor)?
            } else {
                SimpleExtension::etale_algebra(ctx, "t", factor)?
            };
            let point = ClosedPoint::Extension {
                coords: vec![ext.generator()],
                ext,
            };
            let form = local_degree_etale(&fs, &point, Some(&target))?;
            points.push(FiberPoint {
                point,
                multiplicity: 1,
                form,
            });
        }
    }
    FiberReport::assemble(ctx, vec![y], points)
}

/// Fiber of a square system over a rational `y`, solved by back-substitution:
/// repeatedly pick an equation in a single unsolved variable, solve it, and
/// substitute. Rational roots of any multiplicity are allowed at every step;
/// irrational roots only for the last unsolved variable, where they must be
/// etale points.
pub fn fiber_sum_triangular(f: &[Polynomial], y: &[FieldElement]) -> Result<FiberReport> {
    let n = f.first().map(|p| p.nvars()).ok_or(Error::ZeroIdealInput)?;
    if f.len() != n || y.len() != n {
        return Err(Error::InvalidInput(
            "system, target and space dimensions differ".into(),
        ));
    }
    let ctx = f[0].context();
    let y: Vec<FieldElement> = y.iter().map(|a| ctx.coerce(a)).collect::<Result<_>>()?;
    let eqs: Vec<Polynomial> = f
        .iter()
        .zip(&y)
        .map(|(fi, yi)| fi - &Polynomial::constant(fi.ring(), yi.clone()))
        .collect();
    let mut points = Vec::new();
    let mut stack: Vec<Vec<Option<FieldElement>>> = vec![vec![None; n]];
    while let Some(assign) = stack.pop() {
        let mut reduced: Vec<Polynomial> = Vec::new();
        for e in &eqs {
            let mut p = e.clone();
            for (i, v) in assign.iter().enumerate() {
                if let Some(v) = v {
                    p = p.substitute(i, v);
                }
            }
            if p.is_constant() {
                if !p.is_zero() {
                    reduced.clear();
                    reduced.push(p);
                    break;
                }
                continue;
            }
            reduced.push(p);
        }
        if reduced.iter().any(|p| p.is_constant()) {
            continue; // inconsistent branch
        }
        let unsolved: Vec<usize> = (0..n).filter(|&i| assign[i].is_none()).collect();
        if unsolved.is_empty() {
            let x: Vec<FieldElement> = assign.into_iter().map(Option::unwrap).collect();
            let form = ekl_class(f, &x, Some(&y))?;
            points.push(FiberPoint {
                multiplicity: form.rank(),
                point: ClosedPoint::Rational(x),
                form,
            });
            continue;
        }
        if reduced.is_empty() {
            return Err(Error::UnresolvedFiber("the fiber is not finite".into()));
        }
        // Candidate unknowns with their gcd, rational roots and leftover.
        // Unknowns whose values are all rational go first, so an irrational
        // coordinate is postponed until it is the last one.
        let mut candidates = Vec::new();
        for var in unsolved.iter().copied() {
            let mut g = UniPoly::zero(ctx);
            let mut seen = false;
            for p in reduced.iter().filter(|p| p.support_vars() == [var]) {
                g = g.gcd(&p.to_univariate(var)?);
                seen = true;
            }
            if !seen {
                continue;
            }
            let roots = g.roots();
            let mut rest = g;
            for root in &roots {
                rest.deflate_root(root);
            }
            candidates.push((var, roots, rest));
        }
        let pick = candidates
            .iter()
            .position(|(_, _, rest)| rest.degree().unwrap_or(0) == 0)
            .unwrap_or(0);
        if candidates.is_empty() {
            return Err(Error::UnresolvedFiber(
                "no equation in a single unknown; the system is not triangular".into(),
            ));
        }
        let (var, roots, rest) = candidates.swap_remove(pick);
        let last = unsolved.len() == 1;
        for root in roots {
            let mut next = assign.clone();
            next[var] = Some(root);
            stack.push(next);
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        if !last {
            return Err(Error::UnresolvedFiber(format!(
                "irrational values of {} before the last unknown: {rest}",
                f[0].ring().vars()[var]
            )));
        }
        for (part, mult) in rest.squarefree_decomposition() {
            if mult != 1 {
                return Err(Error::UnresolvedFiber(format!(
                    "irrational multiple points: {part}"
                )));
            }
            for (factor, certified) in part.split_rootless_squarefree() {
                let ext = if certified {
                    SimpleExtension::new_promised_irreducible(ctx, "t", factor)?
                } else {
                    SimpleExtension::etale_algebra(ctx, "t", factor)?
                };
                let coords: Vec<ExtElement> = (0..n)
                    .map(|i| match &assign[i] {
                        Some(v) => ext.from_base(v),
                        None => ext.generator(),
                    })
                    .collect();
                let point = ClosedPoint::Extension { ext, coords };
                let form = local_degree_etale(f, &point, Some(&y)).map_err(|e| match e {
                    Error::NotEtale => {
                        Error::UnresolvedFiber(format!("non-etale irrational point {point}"))
                    }
                    other => other,
                })?;
                points.push(FiberPoint {
                    point,
                    multiplicity: 1,
                    form,
                });
            }
        }
    }
    FiberReport::assemble(ctx, y, points)
}

/// Integer points of `[-bound, bound]^n` lying over `y`. This is a search,
/// not a certificate: points outside the box or irrational points are missed.
pub fn rational_points_in_box(
    f: &[Polynomial],
    y: &[FieldElement],
    bound: i64,
) -> Result<Vec<Vec<FieldElement>>> {
    let n = f.first().map(|p| p.nvars()).ok_or(Error::ZeroIdealInput)?;
    let ctx = f[0].context();
    let side = (2 * bound + 1) as u64;
    let total = side
        .checked_pow(n as u32)
        .ok_or(Error::CapExceeded(usize::MAX))?;
    if total > 10_000_000 {
        return Err(Error::CapExceeded(total as usize));
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let x: Vec<FieldElement> = (0..n)
            .map(|_| {
                let v = (c % side) as i64 - bound;
                c /= side;
                ctx.from_i64(v)
            })
            .collect();
        let mut hit = true;
        for (fi, yi) in f.iter().zip(y) {
            if fi.evaluate_at(&x)? != ctx.coerce(yi)? {
                hit = false;
                break;
            }
        }
        if hit {
            out.push(x);
        }
    }
    Ok(out)
}

/// Fiber sum over caller-supplied rational points (e.g. from
/// [`rational_points_in_box`]); each must lie over `y`.
pub fn fiber_sum_at_points(
    f: &[Polynomial],
    y: &[FieldElement],
    xs: &[Vec<FieldElement>],
) -> Result<FiberReport> {
    let ctx = f.first().ok_or(Error::ZeroIdealInput)?.context();
    let mut points = Vec::new();
    for x in xs {
        let form = ekl_class(f, x, Some(y))?;
        points.push(FiberPoint {
            multiplicity: form.rank(),
            point: ClosedPoint::Rational(x.clone()),
            form,
        });
    }
    FiberReport::assemble(ctx, y.to_vec(), points)
}

/// Fiber sum, dispatching on the number of variables.
pub fn fiber_sum(f: &[Polynomial], y: &[FieldElement]) -> Result<FiberReport> {
    if f.len() == 1 && f[0].nvars() == 1 {
        if y.len() != 1 {
            return Err(Error::InvalidInput(
                "target must have one coordinate".into(),
            ));
        }
        fiber_sum_univariate(&f[0], &y[0])
    } else {
        fiber_sum_triangular(f, y)
    }
}

/// Outcome of comparing fiber totals across several base points.
#[derive(Clone, Debug)]
pub struct ConservationReport {
    pub fibers: Vec<FiberReport>,
    pub classes: Vec<GWClass>,
    /// `(index, first differing invariant)` against fiber 0.
    pub witnesses: Vec<(usize, String)>,
}

impl ConservationReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Computes the fiber totals over each `y` and compares them pairwise with
/// the first one, optionally reading the forms in another classifier (e.g. RR).
pub fn conservation_check(
    f: &[Polynomial],
    ys: &[Vec<FieldElement>],
    classifier: Option<FieldContext>,
) -> Result<ConservationReport> {
    let mut fibers = Vec::new();
    let mut classes = Vec::new();
    for y in ys {
        let r = fiber_sum(f, y)?;
        let total = match classifier {
            Some(ctx) => r.total.with_context(ctx)?,
            None => r.total.clone(),
        };
        classes.push(invariants(&total)?);
        fibers.push(r);
    }
    let mut witnesses = Vec::new();
    for k in 1..classes.len() {
        if let Some(d) = classes[0].first_difference(&classes[k])? {
            witnesses.push((k, d));
        }
    }
    Ok(ConservationReport {
        fibers,
        classes,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The Milnor number and the sum of node types differ; the string names
    /// the first differing invariant.
    Obstructed(String),
    NotObstructed,
}

/// Whether `g` can bifurcate into nodes of the given arithmetic types, as far
/// as the class `mu(g) = sum of node types` can tell over `field`.
pub fn bifurcation_obstruction(
    g: &Polynomial,
    node_types: &[SymmetricForm],
    field: FieldContext,
) -> Result<Obstruction> {
    let mu = milnor_number(g)?.with_context(field)?;
    let mut sum = SymmetricForm::zero_form(field);
    for t in node_types {
        sum = sum.direct_sum(&t.with_context(field)?)?;
    }
    Ok(
        match invariants(&mu)?.first_difference(&invariants(&sum)?)? {
            Some(w) => Obstruction::Obstructed(w),
            None => Obstruction::NotObstructed,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::equals;
    use crate::poly::{parse_polynomial, PolyRing};

    const QQ: FieldContext = FieldContext::Rationals;

    fn poly(vars: &[&str], s: &str) -> Polynomial {
        parse_polynomial(&PolyRing::new(QQ, vars), s).unwrap()
    }

    fn h() -> SymmetricForm {
        SymmetricForm::hyperbolic(QQ)
    }

    fn diag(d: &[i64]) -> SymmetricForm {
        SymmetricForm::diagonal_i64(QQ, d)
    }

    #[test]
    fn milnor_examples() {
        let mu = milnor_number(&poly(&["x1", "x2"], "x1^2 + x2^3")).unwrap();
        assert!(equals(&mu, &h()).unwrap());
        let mu = milnor_number(&poly(&["x1", "x2"], "x1^3 + x2^5")).unwrap();
        let four_h = (0..4).fold(SymmetricForm::zero_form(QQ), |acc, _| {
            acc.direct_sum(&h()).unwrap()
        });
        assert!(equals(&mu, &four_h).unwrap());
        let mu = milnor_number(&poly(&["x1", "x2", "x3"], "x1^2 + x2^2 + x3^2")).unwrap();
        assert!(equals(&mu, &diag(&[8])).unwrap());
        assert_eq!(
            milnor_number(&poly(&["x1", "x2"], "x1 + x2^2")),
            Err(Error::NotCriticalPoint)
        );
    }

    #[test]
    fn etale_examples() {
        let f = vec![poly(&["x"], "x^2")];
        let w = local_degree_etale(&f, &ClosedPoint::Rational(vec![QQ.one()]), None).unwrap();
        assert_eq!(w, diag(&[2]));
        let f = vec![poly(&["x"], "x^2 + 1")];
        let l = SimpleExtension::new(QQ, "t", UniPoly::from_i64s(QQ, &[1, 0, 1])).unwrap();
        let pt = ClosedPoint::Extension {
            coords: vec![l.generator()],
            ext: l,
        };
        let w = local_degree_etale(&f, &pt, Some(&[QQ.zero()])).unwrap();
        assert_eq!(
            w,
            SymmetricForm::from_i64(QQ, &[&[0, -4], &[-4, 0]]).unwrap()
        );
        assert!(equals(&w, &h()).unwrap());
        let id = vec![poly(&["x1", "x2"], "x1"), poly(&["x1", "x2"], "x2")];
        let w = local_degree_etale(&id, &ClosedPoint::origin(QQ, 2), None).unwrap();
        assert_eq!(w, diag(&[1]));
        let f = vec![poly(&["x"], "x^2")];
        assert_eq!(
            local_degree_etale(&f, &ClosedPoint::origin(QQ, 1), None),
            Err(Error::NotEtale)
        );
        // x -> x^2 + x at t with t^2 = 2 lands outside QQ.
        let f = vec![poly(&["x"], "x^2 + x")];
        let l = SimpleExtension::new(QQ, "t", UniPoly::from_i64s(QQ, &[-2, 0, 1])).unwrap();
        let pt = ClosedPoint::Extension {
            coords: vec![l.generator()],
            ext: l,
        };
        assert_eq!(
            local_degree_etale(&f, &pt, None),
            Err(Error::NonRationalImage)
        );
    }

    #[test]
    fn node_examples() {
        let o = ClosedPoint::origin(QQ, 2);
        let t = node_arithmetic_type(&poly(&["x1", "x2"], "x1^2 + x2^2"), &o).unwrap();
        assert!(equals(&t, &diag(&[1])).unwrap());
        let t = node_arithmetic_type(&poly(&["x1", "x2"], "x1^2 + 2*x2^2"), &o).unwrap();
        assert!(equals(&t, &diag(&[2])).unwrap());
        let t = node_arithmetic_type(&poly(&["x1", "x2"], "3*x1^2 + 5*x2^2"), &o).unwrap();
        assert!(equals(&t, &diag(&[60])).unwrap());
        assert_eq!(
            node_arithmetic_type(&poly(&["x1", "x2"], "x1^2 + x2^3"), &o),
            Err(Error::DegenerateCriticalPoint)
        );
    }

    #[test]
    fn univariate_fibers() {
        let sq = poly(&["x"], "x^2");
        let at = |y: i64| fiber_sum_univariate(&sq, &QQ.from_i64(y)).unwrap();
        for y in [0, 1, 2, 4] {
            let r = at(y);
            assert!(equals(&r.total, &h()).unwrap(), "y = {y}");
            assert_eq!(r.weighted_point_count(), 2);
        }
        assert_eq!(at(1).points.len(), 2);
        assert_eq!(at(2).points[0].point.residue_degree(), 2);
        let cube = poly(&["x"], "x^3");
        let r0 = fiber_sum_univariate(&cube, &QQ.zero()).unwrap();
        let r1 = fiber_sum_univariate(&cube, &QQ.one()).unwrap();
        assert_eq!(r1.points.len(), 2);
        assert!(equals(&r0.total, &r1.total).unwrap());
        assert!(equals(&r0.total, &h().direct_sum(&diag(&[1])).unwrap()).unwrap());
        // (x^2 - 2)^2 has irrational double roots.
        let f = poly(&["x"], "x^4 - 4*x^2");
        assert!(matches!(
            fiber_sum_univariate(&f, &QQ.from_i64(-4)),
            Err(Error::UnresolvedFiber(_))
        ));
    }

    #[test]
    fn triangular_fibers() {
        let vars = ["x1", "x2"];
        let f = vec![poly(&vars, "x1^3*x2 + x1 - x1^3"), poly(&vars, "x2")];
        let fiber = |y2: i64| fiber_sum_triangular(&f, &[QQ.zero(), QQ.from_i64(y2)]).unwrap();
        let r = fiber(0);
        assert_eq!(r.points.len(), 3);
        assert!(equals(&r.total, &diag(&[1, -2, -2])).unwrap());
        let r = fiber(2);
        assert_eq!(r.total.rank(), 3);
        assert!(equals(&r.total, &diag(&[1]).direct_sum(&h()).unwrap()).unwrap());
        let r = fiber(3);
        assert!(equals(&r.total, &diag(&[2]).direct_sum(&h()).unwrap()).unwrap());
        assert_eq!(fiber(1).total.rank(), 1);
        // The irrational unknown is listed first; the rational one is solved first.
        let s = vec![poly(&vars, "x1^2 - 2"), poly(&vars, "x2")];
        let r = fiber_sum_triangular(&s, &[QQ.zero(), QQ.zero()]).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].point.residue_degree(), 2);
        assert!(equals(&r.total, &h()).unwrap());
        // Not triangular: both equations involve both unknowns.
        let g = vec![poly(&vars, "x1 + x2^2"), poly(&vars, "x2 + x1^2")];
        assert!(matches!(
            fiber_sum_triangular(&g, &[QQ.one(), QQ.one()]),
            Err(Error::UnresolvedFiber(_))
        ));
    }

    #[test]
    fn box_search_matches_triangular() {
        let vars = ["x1", "x2"];
        let f = vec![poly(&vars, "x1^3*x2 + x1 - x1^3"), poly(&vars, "x2")];
        let y = [QQ.zero(), QQ.zero()];
        let pts = rational_points_in_box(&f, &y, 3).unwrap();
        assert_eq!(pts.len(), 3);
        let a = fiber_sum_at_points(&f, &y, &pts).unwrap();
        let b = fiber_sum_triangular(&f, &y).unwrap();
        assert!(equals(&a.total, &b.total).unwrap());
    }

    #[test]
    fn conservation_examples() {
        let ys: Vec<Vec<FieldElement>> =
            [0, 1, 4, 9].iter().map(|&y| vec![QQ.from_i64(y)]).collect();
        let r = conservation_check(&[poly(&["x"], "x^2")], &ys, None).unwrap();
        assert!(r.passed());
        let vars = ["x1", "x2"];
        let f = vec![poly(&vars, "x1^3*x2 + x1 - x1^3"), poly(&vars, "x2")];
        let ys: Vec<Vec<FieldElement>> = [0, 2, 3]
            .iter()
            .map(|&y| vec![QQ.zero(), QQ.from_i64(y)])
            .collect();
        let r = conservation_check(&f, &ys, Some(FieldContext::RealClassifier)).unwrap();
        assert!(!r.passed());
        let sigs: Vec<i64> = r.classes.iter().map(|c| c.signature().unwrap()).collect();
        assert_eq!(sigs, vec![-1, 1, 1]);
        let id = vec![poly(&vars, "x1"), poly(&vars, "x2")];
        let ys = vec![
            vec![QQ.zero(), QQ.zero()],
            vec![QQ.from_i64(5), QQ.from_i64(-1)],
        ];
        assert!(conservation_check(&id, &ys, None).unwrap().passed());
    }

    #[test]
    fn obstruction_examples() {
        let cusp = poly(&["x1", "x2"], "x1^2 + x2^3");
        let nodes = [diag(&[1]), diag(&[2])];
        let q5 = FieldContext::PadicClassifier(5);
        assert_eq!(
            bifurcation_obstruction(&cusp, &nodes, q5).unwrap(),
            Obstruction::Obstructed("disc: 1 vs 2".into())
        );
        let q11 = FieldContext::PadicClassifier(11);
        assert_eq!(
            bifurcation_obstruction(&cusp, &nodes, q11).unwrap(),
            Obstruction::NotObstructed
        );
        let split = [diag(&[1]), diag(&[1])];
        assert_eq!(
            bifurcation_obstruction(&cusp, &split, QQ).unwrap(),
            Obstruction::Obstructed("disc: -1 vs 1".into())
        );
    }
}

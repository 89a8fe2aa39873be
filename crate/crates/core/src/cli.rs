//! JSON front end shared by the `ekl` binary and its tests: job parsing,
//! command dispatch, the ADE regression corpus, and text rendering.

use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::degree::{
    conservation_check, fiber_sum, local_degree_etale, milnor_number, node_arithmetic_type,
    ClosedPoint, FiberReport,
};
use crate::ekl::{recentre, EklComputation};
use crate::error::{Error, Result};
use crate::fields::{FieldContext, FieldElement, SimpleExtension};
use crate::gw::{invariants, SymmetricForm};
use crate::poly::{parse_polynomial, PolyRing, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Ekl,
    Milnor,
    NodeType,
    DegreeEtale,
    FiberSum,
    Classify,
    AdeTable,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ekl => "ekl",
            Command::Milnor => "milnor",
            Command::NodeType => "node-type",
            Command::DegreeEtale => "degree-etale",
            Command::FiberSum => "fiber-sum",
            Command::Classify => "classify",
            Command::AdeTable => "ade-table",
        }
    }
}

/// A job read from JSON. Scalars may be given as strings (`"1/2"`) or numbers.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: Option<String>,
    pub vars: Option<Vec<String>>,
    pub polys: Option<Vec<String>>,
    pub poly: Option<String>,
    pub point: Option<Vec<Value>>,
    pub target: Option<Vec<Value>>,
    pub y: Option<Value>,
    pub ys: Option<Vec<Value>>,
    pub modulus: Option<String>,
    pub ext_var: Option<String>,
    pub gram: Option<Vec<Vec<Value>>>,
    /// Field classifier used to compare fiber totals (e.g. "RR").
    pub classifier: Option<String>,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(JobSpec::default());
        }
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("job JSON: {e}")))
    }
}

fn scalar_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!(
            "expected a number or string, found {other}"
        ))),
    }
}

fn natural_key(name: &str) -> (String, u64, String) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, digits) = name.split_at(split);
    (
        head.to_string(),
        digits.parse().unwrap_or(0),
        name.to_string(),
    )
}

/// Identifiers occurring in the expressions, in natural order (x2 < x10).
pub fn infer_vars(exprs: &[String]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for e in exprs {
        let mut cur = String::new();
        let mut in_number = false;
        for c in e.chars().chain(std::iter::once(' ')) {
            if c.is_alphanumeric() || c == '_' {
                if cur.is_empty() && c.is_ascii_digit() {
                    in_number = true;
                }
                if !in_number {
                    cur.push(c);
                }
            } else {
                if !cur.is_empty() && !names.contains(&cur) {
                    names.push(cur.clone());
                }
                cur.clear();
                in_number = false;
            }
        }
    }
    names.sort_by_key(|n| natural_key(n));
    names
}

struct Setup {
    ctx: FieldContext,
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
}

fn context_of(job: &JobSpec, field_override: Option<&str>) -> Result<FieldContext> {
    let spec = field_override.or(job.field.as_deref()).unwrap_or("QQ");
    FieldContext::parse(spec)
}

fn expressions(job: &JobSpec) -> Result<Vec<String>> {
    match (&job.polys, &job.poly) {
        (Some(ps), None) => Ok(ps.clone()),
        (None, Some(p)) => Ok(vec![p.clone()]),
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either \"polys\" or \"poly\", not both".into(),
        )),
        (None, None) => Err(Error::Parse("missing \"polys\"".into())),
    }
}

fn setup(job: &JobSpec, field_override: Option<&str>) -> Result<Setup> {
    let ctx = context_of(job, field_override)?;
    let exprs = expressions(job)?;
    let vars = job.vars.clone().unwrap_or_else(|| infer_vars(&exprs));
    if vars.is_empty() {
        return Err(Error::Parse("no variables declared or found".into()));
    }
    let ring = PolyRing::new(ctx, &vars);
    let polys = exprs
        .iter()
        .map(|e| parse_polynomial(&ring, e))
        .collect::<Result<_>>()?;
    Ok(Setup { ctx, ring, polys })
}

fn parse_scalars(ctx: FieldContext, vals: &[Value]) -> Result<Vec<FieldElement>> {
    vals.iter()
        .map(|v| ctx.parse_element(&scalar_string(v)?))
        .collect()
}

/// The job's extension `k[ext_var]/(modulus)`, when a modulus is given.
fn extension(job: &JobSpec, ctx: FieldContext) -> Result<Option<SimpleExtension>> {
    let Some(m) = &job.modulus else {
        return Ok(None);
    };
    let var = job.ext_var.clone().unwrap_or_else(|| "t".into());
    let r = PolyRing::new(ctx, &[var.as_str()]);
    let modulus = parse_polynomial(&r, m)?.to_univariate(0)?;
    Ok(Some(SimpleExtension::new_promised_irreducible(
        ctx, &var, modulus,
    )?))
}

fn closed_point(job: &JobSpec, s: &Setup) -> Result<ClosedPoint> {
    let n = s.ring.nvars();
    let Some(vals) = &job.point else {
        return Ok(ClosedPoint::origin(s.ctx, n));
    };
    if vals.len() != n {
        return Err(Error::Parse(format!(
            "point has {} coordinates, expected {n}",
            vals.len()
        )));
    }
    match extension(job, s.ctx)? {
        None => Ok(ClosedPoint::Rational(parse_scalars(s.ctx, vals)?)),
        Some(ext) => {
            let r = PolyRing::new(s.ctx, &[ext.var()]);
            let coords = vals
                .iter()
                .map(|v| {
                    let p = parse_polynomial(&r, &scalar_string(v)?)?;
                    Ok(ext.element(&p.to_univariate(0)?))
                })
                .collect::<Result<_>>()?;
            Ok(ClosedPoint::Extension { ext, coords })
        }
    }
}

fn rational_point(job: &JobSpec, s: &Setup) -> Result<Vec<FieldElement>> {
    if job.modulus.is_some() {
        return Err(Error::NonRationalPoint(
            "this command needs a rational point; drop \"modulus\"".into(),
        ));
    }
    match closed_point(job, s)? {
        ClosedPoint::Rational(x) => Ok(x),
        ClosedPoint::Extension { .. } => unreachable!("no modulus given"),
    }
}

fn gram_json(q: &SymmetricForm) -> Value {
    Value::Array(
        q.gram()
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

fn form_json(q: &SymmetricForm) -> Result<Value> {
    let class = invariants(q)?;
    Ok(json!({
        "gram": gram_json(q),
        "gw_class": class.to_string(),
        "invariants": class.to_json(),
    }))
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn ekl_json(c: &EklComputation, field: FieldContext) -> Result<Value> {
    let vars = c.algebra.ring().vars().to_vec();
    Ok(merge(
        form_json(&c.gram)?,
        json!({
            "field": field.to_string(),
            "dimension": c.algebra.dimension(),
            "staircase": c.algebra.staircase().iter().map(|m| m.format_with(&vars)).collect::<Vec<_>>(),
            "socle": c.e_normal_form.to_string(),
        }),
    ))
}

fn fiber_json(r: &FiberReport) -> Result<Value> {
    let points = r
        .points
        .iter()
        .map(|p| {
            Ok(json!({
                "point": p.point.to_string(),
                "residue_degree": p.point.residue_degree(),
                "multiplicity": p.multiplicity,
                "gw_class": invariants(&p.form)?.to_string(),
                "gram": gram_json(&p.form),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "y": r.y.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "points": points,
        "total": form_json(&r.total)?,
    }))
}

fn target_list(job: &JobSpec, ctx: FieldContext, n: usize) -> Result<Vec<Vec<FieldElement>>> {
    let one = |v: &Value| -> Result<Vec<FieldElement>> {
        match v {
            Value::Array(a) => parse_scalars(ctx, a),
            other => parse_scalars(ctx, std::slice::from_ref(other)),
        }
    };
    let ys: Vec<Vec<FieldElement>> = match (&job.y, &job.ys, &job.target) {
        (Some(y), None, None) => vec![one(y)?],
        (None, Some(ys), None) => ys.iter().map(one).collect::<Result<_>>()?,
        (None, None, Some(t)) => vec![parse_scalars(ctx, t)?],
        (None, None, None) => return Err(Error::Parse("missing \"y\" or \"ys\"".into())),
        _ => {
            return Err(Error::Parse(
                "give only one of \"y\", \"ys\", \"target\"".into(),
            ))
        }
    };
    if let Some(bad) = ys.iter().find(|y| y.len() != n) {
        return Err(Error::Parse(format!(
            "target {} has the wrong length",
            bad.len()
        )));
    }
    Ok(ys)
}

/// Runs one command on a job and returns its JSON result.
pub fn run(cmd: Command, job: &JobSpec, field_override: Option<&str>) -> Result<Value> {
    match cmd {
        Command::Ekl => {
            let s = setup(job, field_override)?;
            let x = rational_point(job, &s)?;
            let target = job
                .target
                .as_ref()
                .map(|t| parse_scalars(s.ctx, t))
                .transpose()?;
            let centred = recentre(&s.polys, &x, target.as_deref())?;
            ekl_json(&EklComputation::at_origin(&centred)?, s.ctx)
        }
        Command::Milnor => {
            let s = setup(job, field_override)?;
            let [g] = s.polys.as_slice() else {
                return Err(Error::Parse("milnor takes a single polynomial".into()));
            };
            let mu = milnor_number(g)?;
            Ok(merge(
                form_json(&mu)?,
                json!({ "field": s.ctx.to_string() }),
            ))
        }
        Command::NodeType => {
            let s = setup(job, field_override)?;
            let [g] = s.polys.as_slice() else {
                return Err(Error::Parse("node-type takes a single polynomial".into()));
            };
            let x = closed_point(job, &s)?;
            let t = node_arithmetic_type(g, &x)?;
            Ok(merge(form_json(&t)?, json!({ "point": x.to_string() })))
        }
        Command::DegreeEtale => {
            let s = setup(job, field_override)?;
            let x = closed_point(job, &s)?;
            let target = job
                .target
                .as_ref()
                .map(|t| parse_scalars(s.ctx, t))
                .transpose()?;
            let w = local_degree_etale(&s.polys, &x, target.as_deref())?;
            Ok(merge(
                form_json(&w)?,
                json!({ "point": x.to_string(), "residue_degree": x.residue_degree() }),
            ))
        }
        Command::FiberSum => {
            let s = setup(job, field_override)?;
            let ys = target_list(job, s.ctx, s.polys.len())?;
            let classifier = job
                .classifier
                .as_deref()
                .map(FieldContext::parse)
                .transpose()?;
            if ys.len() == 1 && classifier.is_none() {
                return fiber_json(&fiber_sum(&s.polys, &ys[0])?);
            }
            let report = conservation_check(&s.polys, &ys, classifier)?;
            let fibers = report
                .fibers
                .iter()
                .map(fiber_json)
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "fibers": fibers,
                "classes": report.classes.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                "conserved": report.passed(),
                "witnesses": report
                    .witnesses
                    .iter()
                    .map(|(k, w)| json!({ "fiber": k, "difference": w }))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Classify => {
            let ctx = context_of(job, field_override)?;
            let rows = job
                .gram
                .as_ref()
                .ok_or_else(|| Error::Parse("missing \"gram\"".into()))?;
            let gram = rows
                .iter()
                .map(|r| parse_scalars(ctx, r))
                .collect::<Result<Vec<_>>>()?;
            let q = SymmetricForm::new(ctx, gram)?;
            Ok(merge(form_json(&q)?, json!({ "field": ctx.to_string() })))
        }
        Command::AdeTable => ade_table_json(),
    }
}

/// A row of the ADE table: normal form and the expected class `m*H + <d...>`.
#[derive(Clone, Debug)]
pub struct AdeEntry {
    pub name: String,
    pub polynomial: String,
    pub expected_h: usize,
    pub expected_diag: Vec<i64>,
}

impl AdeEntry {
    pub fn expected_form(&self, ctx: FieldContext) -> SymmetricForm {
        let diag: Vec<FieldElement> = self
            .expected_diag
            .iter()
            .map(|&d| ctx.from_i64(d))
            .collect();
        SymmetricForm::hyperbolic_sum(ctx, self.expected_h, &diag).expect("integer entries")
    }

    pub fn expected_string(&self) -> String {
        let diag: Vec<String> = self.expected_diag.iter().map(|d| d.to_string()).collect();
        match (self.expected_h, diag.is_empty()) {
            (m, true) => format!("{m}*H"),
            (0, false) => format!("<{}>", diag.join(",")),
            (m, false) => format!("{m}*H + <{}>", diag.join(",")),
        }
    }

    pub fn polynomial_in(&self, ctx: FieldContext) -> Result<Polynomial> {
        parse_polynomial(&PolyRing::new(ctx, &["x1", "x2"]), &self.polynomial)
    }
}

/// A_1..A_6, D_4..D_6, E_6..E_8 in two variables with their expected
/// arithmetic Milnor numbers over QQ.
pub fn ade_corpus() -> Vec<AdeEntry> {
    let mut out = Vec::new();
    for n in 1..=6usize {
        let (h, diag) = if n % 2 == 1 {
            ((n - 1) / 2, vec![2 * (n as i64 + 1)])
        } else {
            (n / 2, vec![])
        };
        out.push(AdeEntry {
            name: format!("A{n}"),
            polynomial: format!("x1^2 + x2^{}", n + 1),
            expected_h: h,
            expected_diag: diag,
        });
    }
    for n in 4..=6usize {
        let (h, diag) = if n % 2 == 0 {
            ((n - 2) / 2, vec![-2, 2 * (n as i64 - 1)])
        } else {
            ((n - 1) / 2, vec![-2])
        };
        out.push(AdeEntry {
            name: format!("D{n}"),
            polynomial: format!("x2*(x1^2 + x2^{})", n - 2),
            expected_h: h,
            expected_diag: diag,
        });
    }
    let e = |name: &str, p: &str, h: usize, diag: Vec<i64>| AdeEntry {
        name: name.into(),
        polynomial: p.into(),
        expected_h: h,
        expected_diag: diag,
    };
    out.push(e("E6", "x1^3 + x2^4", 3, vec![]));
    out.push(e("E7", "x1*(x1^2 + x2^3)", 3, vec![-3]));
    out.push(e("E8", "x1^3 + x2^5", 4, vec![]));
    out
}

fn ade_table_json() -> Result<Value> {
    let ctx = FieldContext::Rationals;
    let mut rows = Vec::new();
    let mut all = true;
    for entry in ade_corpus() {
        let mu = milnor_number(&entry.polynomial_in(ctx)?)?;
        let computed = invariants(&mu)?;
        let pass = computed.equals(&invariants(&entry.expected_form(ctx))?)?;
        all &= pass;
        rows.push(json!({
            "name": entry.name,
            "polynomial": entry.polynomial,
            "rank": computed.rank(),
            "computed": computed.to_string(),
            "expected": entry.expected_string(),
            "pass": pass,
        }));
    }
    Ok(json!({ "rows": rows, "all_pass": all }))
}

/// Machine-readable error object.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

/// Plain-text rendering of a command result.
pub fn render_pretty(cmd: Command, v: &Value) -> String {
    let mut out = String::new();
    if let Some(err) = v.get("error") {
        out.push_str(&format!(
            "error ({}): {}\n",
            err["kind"].as_str().unwrap_or("?"),
            err["message"].as_str().unwrap_or("")
        ));
        return out;
    }
    let gram_text = |g: &Value| -> String {
        g.as_array()
            .map(|rows| {
                rows.iter()
                    .map(|r| {
                        let cells: Vec<&str> = r
                            .as_array()
                            .map(|c| c.iter().filter_map(|x| x.as_str()).collect())
                            .unwrap_or_default();
                        format!("  [{}]\n", cells.join(", "))
                    })
                    .collect()
            })
            .unwrap_or_default()
    };
    let form_text = |v: &Value| -> String {
        let inv = &v["invariants"];
        let mut s = format!("class: {}\n", v["gw_class"].as_str().unwrap_or("?"));
        s.push_str(&format!("rank: {}\n", inv["rank"]));
        if let Some(d) = inv["disc"].as_str() {
            s.push_str(&format!("disc: {d}\n"));
        }
        if let Some(sig) = inv["signature"].as_i64() {
            s.push_str(&format!("signature: {sig}\n"));
        }
        if let Some(h) = inv["hasse"].as_object().filter(|h| !h.is_empty()) {
            let parts: Vec<String> = h.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            s.push_str(&format!("hasse: {}\n", parts.join(" ")));
        }
        s.push_str("gram:\n");
        s.push_str(&gram_text(&v["gram"]));
        s
    };
    match cmd {
        Command::AdeTable => {
            for row in v["rows"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{:<3} {:<20} computed {:<16} expected {:<16} {}\n",
                    row["name"].as_str().unwrap_or(""),
                    row["polynomial"].as_str().unwrap_or(""),
                    row["computed"].as_str().unwrap_or(""),
                    row["expected"].as_str().unwrap_or(""),
                    if row["pass"].as_bool() == Some(true) {
                        "PASS"
                    } else {
                        "FAIL"
                    }
                ));
            }
        }
        Command::FiberSum => {
            let fibers: Vec<&Value> = match v.get("fibers") {
                Some(f) => f.as_array().into_iter().flatten().collect(),
                None => vec![v],
            };
            for f in fibers {
                let ys: Vec<&str> = f["y"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(|y| y.as_str())
                    .collect();
                out.push_str(&format!("fiber over ({}):\n", ys.join(", ")));
                for p in f["points"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "  {}  mult {}  {}\n",
                        p["point"].as_str().unwrap_or(""),
                        p["multiplicity"],
                        p["gw_class"].as_str().unwrap_or("")
                    ));
                }
                out.push_str(&format!(
                    "  total: {}\n",
                    f["total"]["gw_class"].as_str().unwrap_or("")
                ));
            }
            if let Some(c) = v.get("conserved") {
                out.push_str(&format!("conserved: {c}\n"));
                for w in v["witnesses"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "  fiber {} differs: {}\n",
                        w["fiber"],
                        w["difference"].as_str().unwrap_or("")
                    ));
                }
            }
        }
        _ => {
            if let Some(p) = v.get("point").and_then(|p| p.as_str()) {
                out.push_str(&format!("point: {p}\n"));
            }
            if let Some(d) = v.get("dimension") {
                out.push_str(&format!("dimension: {d}\n"));
            }
            if let Some(e) = v.get("socle").and_then(|e| e.as_str()) {
                out.push_str(&format!("socle element: {e}\n"));
            }
            out.push_str(&form_text(v));
        }
    }
    out
}

//! Helpers shared by the integration test targets.
#![allow(dead_code, clippy::needless_range_loop)]

use ekl::fields::{FieldContext, FieldElement};
use ekl::gw::SymmetricForm;
use ekl::poly::{gradient, parse_polynomial, Monomial, PolyRing, Polynomial};

pub const QQ: FieldContext = FieldContext::Rationals;

pub fn poly(ctx: FieldContext, vars: &[&str], s: &str) -> Polynomial {
    parse_polynomial(&PolyRing::new(ctx, vars), s).unwrap()
}

pub fn system(ctx: FieldContext, vars: &[&str], fs: &[&str]) -> Vec<Polynomial> {
    let r = PolyRing::new(ctx, vars);
    fs.iter()
        .map(|s| parse_polynomial(&r, s).unwrap())
        .collect()
}

pub fn diag(ctx: FieldContext, entries: &[i64]) -> SymmetricForm {
    SymmetricForm::diagonal_i64(ctx, entries)
}

/// An ADE normal form with its tabulated class `m*H + <d...>`.
pub struct AdeRow {
    pub name: String,
    pub g: String,
    pub milnor: usize,
    pub h: usize,
    pub diag: Vec<i64>,
}

impl AdeRow {
    pub fn function(&self, ctx: FieldContext) -> Polynomial {
        poly(ctx, &["x1", "x2"], &self.g)
    }

    pub fn gradient(&self, ctx: FieldContext) -> Vec<Polynomial> {
        gradient(&self.function(ctx))
    }

    pub fn expected(&self, ctx: FieldContext) -> SymmetricForm {
        let d: Vec<FieldElement> = self.diag.iter().map(|&a| ctx.from_i64(a)).collect();
        SymmetricForm::hyperbolic_sum(ctx, self.h, &d).unwrap()
    }
}

/// The ADE table with classes written out from the closed formulas in n.
pub fn ade_table() -> Vec<AdeRow> {
    let mut rows = Vec::new();
    for n in 1..=6i64 {
        let (h, diag) = if n % 2 == 1 {
            ((n - 1) / 2, vec![2 * (n + 1)])
        } else {
            (n / 2, vec![])
        };
        rows.push(AdeRow {
            name: format!("A{n}"),
            g: format!("x1^2 + x2^{}", n + 1),
            milnor: n as usize,
            h: h as usize,
            diag,
        });
    }
    for n in 4..=6i64 {
        let (h, diag) = if n % 2 == 0 {
            ((n - 2) / 2, vec![-2, 2 * (n - 1)])
        } else {
            ((n - 1) / 2, vec![-2])
        };
        rows.push(AdeRow {
            name: format!("D{n}"),
            g: format!("x2*(x1^2 + x2^{})", n - 2),
            milnor: n as usize,
            h: h as usize,
            diag,
        });
    }
    for (name, g, mu, h, diag) in [
        ("E6", "x1^3 + x2^4", 6, 3, vec![]),
        ("E7", "x1*(x1^2 + x2^3)", 7, 3, vec![-3]),
        ("E8", "x1^3 + x2^5", 8, 4, vec![]),
    ] {
        rows.push(AdeRow {
            name: name.into(),
            g: g.into(),
            milnor: mu,
            h,
            diag,
        });
    }
    rows
}

/// Maps with an isolated zero at the origin, beyond the gradients of the table.
pub fn extra_systems(ctx: FieldContext) -> Vec<Vec<Polynomial>> {
    vec![
        system(ctx, &["x1", "x2"], &["2*x1", "3*x2^2"]),
        system(ctx, &["x1", "x2"], &["x1^2 + x2^2", "x1*x2"]),
        system(ctx, &["x1", "x2"], &["x1^2 - x2^3", "x1*x2 + x2^4"]),
        system(ctx, &["x1", "x2", "x3"], &["x1^2", "x2^2", "x3^2"]),
        system(
            ctx,
            &["x1", "x2", "x3"],
            &["x1 + x2*x3", "x2^2 - x3^3", "x3^2 + x1*x2"],
        ),
        system(ctx, &["x"], &["x^5 - 3*x^6"]),
    ]
}

/// Gradients of the table plus the extra systems.
pub fn full_corpus(ctx: FieldContext) -> Vec<(String, Vec<Polynomial>)> {
    let mut out: Vec<(String, Vec<Polynomial>)> = ade_table()
        .iter()
        .map(|r| (format!("grad {}", r.name), r.gradient(ctx)))
        .collect();
    for (i, f) in extra_systems(ctx).into_iter().enumerate() {
        out.push((format!("extra {i}"), f));
    }
    out
}

/// Rank by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] * &inv;
            for j in c..ncols {
                let t = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        r += 1;
    }
    r
}

fn monomials_below(nvars: usize, b: u32) -> Vec<Monomial> {
    (0..b)
        .flat_map(|d| Monomial::all_of_degree(nvars, d))
        .collect()
}

fn coefficient_row(p: &Polynomial, basis: &[Monomial]) -> Vec<FieldElement> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

/// Rows spanning the image of `(f) + m^b` in `k[x]/m^b`.
fn macaulay_rows(f: &[Polynomial], b: u32) -> (Vec<Monomial>, Vec<Vec<FieldElement>>) {
    let n = f[0].nvars();
    let basis = monomials_below(n, b);
    let ctx = f[0].context();
    let mut rows = Vec::new();
    for fi in f {
        for m in &basis {
            let shifted = fi.mul_term(m, &ctx.one()).truncate(b);
            if !shifted.is_zero() {
                rows.push(coefficient_row(&shifted, &basis));
            }
        }
    }
    (basis, rows)
}

fn truncated_dimension(f: &[Polynomial], b: u32) -> usize {
    let (basis, rows) = macaulay_rows(f, b);
    basis.len() - rank(rows)
}

/// Local dimension from Macaulay matrices: the first `b` with
/// `dim k[x]/(I + m^b) = dim k[x]/(I + m^(b+1))`, where Nakayama gives
/// `m^b` inside the local ideal. Returns `(dim, b)`.
pub fn macaulay_dimension(f: &[Polynomial], max_b: u32) -> Option<(usize, u32)> {
    let mut prev = truncated_dimension(f, 1);
    for b in 1..max_b {
        let next = truncated_dimension(f, b + 1);
        if next == prev {
            return Some((prev, b));
        }
        prev = next;
    }
    None
}

/// Whether `h` lies in `(f) + m^b`.
pub fn in_truncated_ideal(f: &[Polynomial], h: &Polynomial, b: u32) -> bool {
    let (basis, mut rows) = macaulay_rows(f, b);
    let before = rank(rows.clone());
    rows.push(coefficient_row(&h.truncate(b), &basis));
    rank(rows) == before
}

//! Property tests for the algebraic invariants of each module.
#![allow(clippy::needless_range_loop)]

mod common;

use std::sync::Arc;

use common::*;
use ekl::degree::{local_degree_etale, node_arithmetic_type, ClosedPoint};
use ekl::ekl::{alternate_functionals, ekl_class, gram_matrix, socle_element_from, EklComputation};
use ekl::fields::univariate::UniPoly;
use ekl::fields::{
    hilbert_symbol, reduce_square_class, FieldContext, FieldElement, Place, SimpleExtension,
};
use ekl::gw::{equals, invariants, present, SymmetricForm};
use ekl::poly::{
    gradient, linear_splitting, linear_splitting_reversed, Monomial, PolyRing, Polynomial,
};
use ekl::standard_basis::standard_basis;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn ring(ctx: FieldContext, n: usize) -> Arc<PolyRing> {
    PolyRing::standard(ctx, n)
}

fn build(r: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let mut p = Polynomial::zero(r);
    for (e, c) in terms {
        p.add_term(Monomial::new(e.clone()), &r.context().from_i64(*c));
    }
    p
}

fn terms(n: usize, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..4, n), -6i64..=6), 0..max_terms)
}

fn field() -> impl Strategy<Value = FieldContext> {
    prop_oneof![
        Just(FieldContext::Rationals),
        Just(FieldContext::prime_field(7).unwrap()),
        Just(FieldContext::prime_field(2).unwrap()),
    ]
}

fn rational() -> impl Strategy<Value = BigRational> {
    ((-30i64..=30).prop_filter("nonzero", |n| *n != 0), 1i64..=12)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn q_elem(q: &BigRational) -> FieldElement {
    QQ.from_rational(q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(ctx in field(), a in terms(2, 5), b in terms(2, 5), c in terms(2, 5)) {
        let r = ring(ctx, 2);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn splittings_reconstruct_the_map(ctx in field(), fs in prop::collection::vec(terms(3, 6), 3)) {
        let r = ring(ctx, 3);
        let f: Vec<Polynomial> = fs.iter().map(|t| build(&r, t)).collect();
        for split in [linear_splitting(&f), linear_splitting_reversed(&f)] {
            for (fi, row) in f.iter().zip(&split) {
                let mut sum = Polynomial::zero(&r);
                for (j, a) in row.iter().enumerate() {
                    sum = &sum + &(a * &Polynomial::var(&r, j));
                }
                let expected = fi - &Polynomial::constant(&r, fi.constant_term());
                prop_assert_eq!(sum, expected);
            }
        }
    }

    #[test]
    fn gradient_is_linear_and_leibniz(ctx in field(), a in terms(2, 5), b in terms(2, 5), k in -5i64..5) {
        let r = ring(ctx, 2);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let kc = ctx.from_i64(k);
        let lin = gradient(&(&a.scale(&kc) + &b));
        let (ga, gb) = (gradient(&a), gradient(&b));
        let prod = gradient(&(&a * &b));
        for i in 0..2 {
            prop_assert_eq!(&lin[i], &(&ga[i].scale(&kc) + &gb[i]));
            prop_assert_eq!(&prod[i], &(&(&ga[i] * &b) + &(&a * &gb[i])));
        }
    }

    #[test]
    fn translation_round_trips(ctx in field(), a in terms(3, 6), shift in prop::collection::vec(-5i64..5, 3)) {
        let r = ring(ctx, 3);
        let f = build(&r, &a);
        let s: Vec<FieldElement> = shift.iter().map(|&v| ctx.from_i64(v)).collect();
        let back: Vec<FieldElement> = s.iter().map(|v| -v).collect();
        prop_assert_eq!(f.translate(&s).unwrap().translate(&back).unwrap(), f.clone());
        // Translating moves evaluation: f(x + s) at 0 is f(s).
        prop_assert_eq!(f.translate(&s).unwrap().constant_term(), f.evaluate_at(&s).unwrap());
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(idx in 0usize..12, a in terms(2, 6), b in terms(2, 6), k in -5i64..5) {
        let row = &ade_table()[idx];
        let alg = standard_basis(&row.gradient(QQ)).unwrap();
        let r = alg.ring().clone();
        let (h1, h2) = (build(&r, &a), build(&r, &b));
        let kc = QQ.from_i64(k);
        let combined = alg.normal_form(&(&h1.scale(&kc) + &h2)).unwrap();
        let separate = &alg.normal_form(&h1).unwrap().scale(&kc) + &alg.normal_form(&h2).unwrap();
        prop_assert_eq!(combined, separate);
        let nf = alg.normal_form(&h1).unwrap();
        prop_assert_eq!(alg.normal_form(&nf).unwrap(), nf);
        prop_assert_eq!(alg.staircase().len(), alg.dimension());
    }

    #[test]
    fn multiplication_matrices_commute(idx in 0usize..12, a in terms(2, 4), b in terms(2, 4)) {
        let alg = standard_basis(&ade_table()[idx].gradient(QQ)).unwrap();
        let r = alg.ring().clone();
        let ma = alg.multiplication_matrix(&build(&r, &a)).unwrap();
        let mb = alg.multiplication_matrix(&build(&r, &b)).unwrap();
        let mul = |x: &Vec<Vec<FieldElement>>, y: &Vec<Vec<FieldElement>>| {
            let d = x.len();
            (0..d)
                .map(|i| (0..d).map(|j| (0..d).fold(QQ.zero(), |s, k| &s + &(&x[i][k] * &y[k][j]))).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(mul(&ma, &mb), mul(&mb, &ma));
    }

    #[test]
    fn hasse_invariant_is_a_cocycle(d1 in prop::collection::vec(rational(), 1..4), d2 in prop::collection::vec(rational(), 1..4)) {
        let q1 = SymmetricForm::diagonal(QQ, &d1.iter().map(q_elem).collect::<Vec<_>>()).unwrap();
        let q2 = SymmetricForm::diagonal(QQ, &d2.iter().map(q_elem).collect::<Vec<_>>()).unwrap();
        let (c1, c2) = (invariants(&q1).unwrap(), invariants(&q2).unwrap());
        let sum = invariants(&q1.direct_sum(&q2).unwrap()).unwrap();
        prop_assert_eq!(sum.rank(), c1.rank() + c2.rank());
        prop_assert_eq!(sum.signature().unwrap(), c1.signature().unwrap() + c2.signature().unwrap());
        prop_assert_eq!(sum.disc().unwrap(), &c1.disc().unwrap().mul(c2.disc().unwrap()));
        let det1 = q1.det().as_rational().unwrap().clone();
        let det2 = q2.det().as_rational().unwrap().clone();
        let mut places: Vec<Place> = vec![Place::Infinity];
        for k in sum.hasse().keys().chain(c1.hasse().keys()).chain(c2.hasse().keys()) {
            if !places.contains(k) {
                places.push(*k);
            }
        }
        for p in places {
            let cross = hilbert_symbol(&det1, &det2, p).unwrap();
            prop_assert_eq!(sum.hasse_at(p), c1.hasse_at(p) * c2.hasse_at(p) * cross, "place {}", p);
        }
    }

    #[test]
    fn square_classes_ignore_squares(a in rational(), c in rational(), p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        for ctx in [QQ, FieldContext::RealClassifier, FieldContext::padic(p).unwrap(), FieldContext::padic(2).unwrap()] {
            let a_e = ctx.from_rational(&a).unwrap();
            let c_e = ctx.from_rational(&c).unwrap();
            let q1 = SymmetricForm::diagonal(ctx, std::slice::from_ref(&a_e)).unwrap();
            let q2 = SymmetricForm::diagonal(ctx, &[&a_e * &(&c_e * &c_e)]).unwrap();
            prop_assert!(equals(&q1, &q2).unwrap());
            let class = reduce_square_class(ctx, &a_e).unwrap();
            prop_assert_eq!(reduce_square_class(ctx, &class.to_element()).unwrap(), class.clone());
            let prod = reduce_square_class(ctx, &(&a_e * &c_e)).unwrap();
            prop_assert_eq!(prod, class.mul(&reduce_square_class(ctx, &c_e).unwrap()));
        }
        let fp = FieldContext::prime_field(p).unwrap();
        let (an, cn) = (a.numer().clone(), c.numer().clone());
        if (&an % BigInt::from(p)) != BigInt::from(0) && (&cn % BigInt::from(p)) != BigInt::from(0) {
            let (x, y) = (fp.from_bigint(&an), fp.from_bigint(&cn));
            let cls = reduce_square_class(fp, &x).unwrap();
            prop_assert_eq!(reduce_square_class(fp, &(&x * &(&y * &y))).unwrap(), cls);
        }
    }

    #[test]
    fn hilbert_symbol_identities(a in rational(), b in rational(), c in rational(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        for place in [Place::Infinity, Place::Prime(p)] {
            let h = |x: &BigRational, y: &BigRational| hilbert_symbol(x, y, place).unwrap();
            prop_assert_eq!(h(&a, &b), h(&b, &a));
            prop_assert_eq!(h(&(&a * &b), &c), h(&a, &c) * h(&b, &c));
            prop_assert_eq!(h(&a, &-a.clone()), 1);
        }
    }

    #[test]
    fn equality_is_invariant_under_permutation(entries in prop::collection::vec(-6i64..=6, 10), ctx in prop_oneof![
        Just(FieldContext::Rationals),
        Just(FieldContext::RealClassifier),
        Just(FieldContext::prime_field(5).unwrap()),
        Just(FieldContext::padic(3).unwrap()),
    ]) {
        // A random symmetric 4x4 matrix from 10 upper-triangular entries.
        let mut g = vec![vec![0i64; 4]; 4];
        let mut it = entries.iter();
        for i in 0..4 {
            for j in i..4 {
                let v = *it.next().unwrap();
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        let rows: Vec<&[i64]> = g.iter().map(|r| r.as_slice()).collect();
        let q = SymmetricForm::from_i64(ctx, &rows).unwrap();
        prop_assume!(q.is_nondegenerate());
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            let p = q.permuted(&perm);
            prop_assert!(equals(&q, &p).unwrap());
            prop_assert!(equals(&p, &q).unwrap());
        }
        let pres = present(&q).unwrap();
        prop_assert_eq!(pres.rank(), q.rank());
        prop_assert!(equals(&pres.to_form(), &q).unwrap());
    }

    #[test]
    fn ext_trace_is_linear(e in prop::collection::vec(-9i64..=9, 3), f in prop::collection::vec(-9i64..=9, 3), k in -5i64..=5) {
        let ext = SimpleExtension::new(QQ, "t", UniPoly::from_i64s(QQ, &[-2, 0, 0, 1])).unwrap();
        let (ee, fe) = (ext.element(&UniPoly::from_i64s(QQ, &e)), ext.element(&UniPoly::from_i64s(QQ, &f)));
        let kc = QQ.from_i64(k);
        let lhs = ext.ext_trace(&ext.add(&ext.scale(&kc, &ee), &fe));
        prop_assert_eq!(lhs, &(&kc * &ext.ext_trace(&ee)) + &ext.ext_trace(&fe));
    }

    #[test]
    fn node_type_survives_linear_changes(m in prop::collection::vec(-3i64..=3, 4), idx in 0usize..3) {
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det != 0);
        let g = ["x1^2 + x2^2", "x1^2 + 2*x2^2", "x1*x2 - 3*x2^2 + x1^3"][idx];
        let r = PolyRing::new(QQ, &["x1", "x2"]);
        let gp = ekl::poly::parse_polynomial(&r, g).unwrap();
        let sub = [
            ekl::poly::parse_polynomial(&r, &format!("{}*x1 + {}*x2", m[0], m[1])).unwrap(),
            ekl::poly::parse_polynomial(&r, &format!("{}*x1 + {}*x2", m[2], m[3])).unwrap(),
        ];
        let composed = gp.evaluate(&r, &sub).unwrap();
        let origin = ClosedPoint::origin(QQ, 2);
        let before = node_arithmetic_type(&gp, &origin).unwrap();
        let after = node_arithmetic_type(&composed, &origin).unwrap();
        prop_assert!(equals(&before, &after).unwrap());
    }

    #[test]
    fn etale_degree_agrees_with_ekl_class(a in -4i64..=4, b in -4i64..=4, c in 1i64..=4, x0 in -3i64..=3, y0 in -3i64..=3) {
        let r = PolyRing::new(QQ, &["x1", "x2"]);
        let f = vec![
            ekl::poly::parse_polynomial(&r, &format!("{c}*x1 + {a}*x2^2 + x1*x2")).unwrap(),
            ekl::poly::parse_polynomial(&r, &format!("{b}*x1^2 + x2 - x1*x2^2")).unwrap(),
        ];
        let x = vec![QQ.from_i64(x0), QQ.from_i64(y0)];
        let y: Vec<FieldElement> = f.iter().map(|p| p.evaluate_at(&x).unwrap()).collect();
        match local_degree_etale(&f, &ClosedPoint::Rational(x.clone()), Some(&y)) {
            Ok(w) => prop_assert!(equals(&w, &ekl_class(&f, &x, Some(&y)).unwrap()).unwrap()),
            Err(ekl::Error::NotEtale) => prop_assert!(ekl_class(&f, &x, Some(&y)).unwrap().rank() > 1),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }
}

#[test]
fn functional_and_splitting_choices_do_not_change_the_class() {
    for (name, f) in full_corpus(QQ) {
        let c = EklComputation::at_origin(&f).unwrap();
        let base = invariants(&c.gram).unwrap();
        for phi in alternate_functionals(&c.algebra, &c.e_normal_form).unwrap() {
            let g = gram_matrix(&c.algebra, &phi).unwrap();
            assert!(base.equals(&invariants(&g).unwrap()).unwrap(), "{name}");
        }
        let e_rev = socle_element_from(&c.algebra, &linear_splitting_reversed(&f)).unwrap();
        assert_eq!(e_rev, c.e_normal_form, "{name}");
        assert_eq!(c.gram.rank(), c.algebra.dimension());
        assert!(c.gram.is_nondegenerate(), "{name}");
    }
}

#[test]
fn socle_annihilated_by_every_variable() {
    for ctx in [QQ, FieldContext::prime_field(7).unwrap()] {
        for (name, f) in full_corpus(ctx) {
            let Ok(c) = EklComputation::at_origin(&f) else {
                continue;
            };
            for i in 0..f[0].nvars() {
                let xe = &Polynomial::var(f[0].ring(), i) * &c.e_normal_form;
                assert!(
                    c.algebra.normal_form(&xe).unwrap().is_zero(),
                    "{name} over {ctx}"
                );
            }
        }
    }
}

//! Randomized invariants of the polynomial layer and the basis engine.

use proptest::prelude::*;

use discvar::field::{rat, Rat};
use discvar::groebner::{
    buchberger, buchberger_limited, is_groebner_basis, reduce, reduce_with_quotients, Limits,
    PolySystem,
};
use discvar::poly::{Monomial, MonomialOrder, MultiPoly, VarContext};
use discvar::ratfunc::{KPoly, RatFunc};
use discvar::Field;

fn ctx3() -> VarContext {
    VarContext::new(vec!["x", "y", "z"])
}

fn arb_poly() -> impl Strategy<Value = MultiPoly<Rat>> {
    // up to 6 terms, degrees <= 3 per variable, small rational coefficients
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..3, 3),
            -9i64..10,
            1i64..5,
        ),
        0..6,
    )
    .prop_map(|terms| {
        let ctx = ctx3();
        let terms = terms
            .into_iter()
            .filter(|(_, n, _)| *n != 0)
            .map(|(e, n, d)| (Monomial::from_exps(e), rat(n, d)))
            .collect();
        MultiPoly::from_terms(&ctx, MonomialOrder::GrevLex, terms)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn canonical_form_is_equality(a in arb_poly(), b in arb_poly()) {
        // structural equality coincides with mathematical equality
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if a != b {
            prop_assert!(!a.sub(&b).is_zero());
        }
    }

    #[test]
    fn grevlex_leading_degree_of_homogeneous(exps in proptest::collection::vec(
        (0u32..4, 0u32..4), 1..5), d in 1u32..5)
    {
        // pad every exponent pair to total degree d: a homogeneous poly
        let ctx = ctx3();
        let terms: Vec<(Monomial, Rat)> = exps.into_iter().map(|(a, b)| {
            let a = a.min(d);
            let b = b.min(d - a);
            let c = d - a - b;
            (Monomial::from_exps(vec![a, b, c]), rat(1, 1))
        }).collect();
        let p = MultiPoly::from_terms(&ctx, MonomialOrder::GrevLex, terms);
        if !p.is_zero() {
            prop_assert!(p.is_homogeneous());
            prop_assert_eq!(p.leading_monomial().degree(), p.total_degree().unwrap());
        }
    }

    #[test]
    fn monomial_orders_are_total_and_multiplicative(
        a in proptest::collection::vec(0u32..5, 4),
        b in proptest::collection::vec(0u32..5, 4),
        w in proptest::collection::vec(0u32..5, 4),
        which in 0usize..3)
    {
        use std::cmp::Ordering;
        let order = [MonomialOrder::GrevLex, MonomialOrder::Lex,
                     MonomialOrder::Block { first: 2 }][which];
        let (ma, mb, mw) = (
            Monomial::from_exps(a),
            Monomial::from_exps(b),
            Monomial::from_exps(w),
        );
        // antisymmetry and identity of the comparison
        prop_assert_eq!(order.cmp(&ma, &mb), order.cmp(&mb, &ma).reverse());
        prop_assert_eq!(order.cmp(&ma, &ma), Ordering::Equal);
        // multiplicative: u < v implies u w < v w
        prop_assert_eq!(order.cmp(&ma.mul(&mw), &mb.mul(&mw)), order.cmp(&ma, &mb));
        // the unit monomial is minimal
        let one = Monomial::one(4);
        if !ma.is_one() {
            prop_assert_eq!(order.cmp(&ma, &one), Ordering::Greater);
        }
    }

    #[test]
    fn ratfunc_inverse_product(n1 in -6i64..7, n0 in -6i64..7, m1 in -6i64..7, m0 in -6i64..7) {
        let a = RatFunc::new(
            KPoly::new(vec![rat(n0, 1), rat(n1, 1)]),
            KPoly::new(vec![rat(1, 1)]),
        );
        let b = RatFunc::new(
            KPoly::new(vec![rat(m0, 1), rat(m1, 1)]),
            KPoly::new(vec![rat(1, 1)]),
        );
        prop_assume!(!Field::is_zero(&a) && !Field::is_zero(&b));
        let q = a.div_ref(&b);
        let p = b.div_ref(&a);
        prop_assert_eq!(q.mul_ref(&p), Field::one());
    }

    #[test]
    fn reduction_trace_recomposes(f in arb_poly(), g1 in arb_poly(), g2 in arb_poly()) {
        let gens: Vec<MultiPoly<Rat>> =
            [g1, g2].into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let sys = PolySystem::new(ctx3(), MonomialOrder::GrevLex, gens);
        let (q, r) = reduce_with_quotients(&f, &sys);
        let mut recomposed = r.clone();
        for (qi, gi) in q.iter().zip(sys.gens()) {
            recomposed = recomposed.add(&qi.mul(gi));
        }
        prop_assert_eq!(recomposed, f);
        for (m, _) in r.terms() {
            for gi in sys.gens() {
                prop_assert!(!gi.leading_monomial().divides(m));
            }
        }
    }

    #[test]
    fn buchberger_output_is_confluent_and_idempotent(
        g1 in arb_poly(), g2 in arb_poly())
    {
        let gens: Vec<MultiPoly<Rat>> =
            [g1, g2].into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let sys = PolySystem::new(ctx3(), MonomialOrder::GrevLex, gens);
        // bound the run; skip the rare blowup draws
        let limits = Limits { max_pairs: Some(500), ..Limits::default() };
        if let Ok((basis, _)) = buchberger_limited(&sys, &limits) {
            prop_assert!(is_groebner_basis(&basis));
            prop_assert_eq!(buchberger(&basis), basis.clone());
            // every generator reduces to zero against the basis
            for g in sys.gens() {
                prop_assert!(reduce(g, &basis).is_zero());
            }
        }
    }
}

#[test]
fn eliminate_members_vanish_at_parametric_points() {
    // implicitization cross-check: the eliminated bases of the parabola
    // and the cuspidal cubic vanish at a thousand parametric points
    use discvar::groebner::eliminate;
    use discvar::poly::parse_poly;
    let ctx = VarContext::new(vec!["t", "x", "y"]);
    let order = MonomialOrder::GrevLex;
    for (fx, fy) in [("x - t", "y - t^2"), ("x - t^2", "y - t^3")] {
        let sys = PolySystem::new(
            ctx.clone(),
            order,
            vec![
                parse_poly::<Rat>(fx, &ctx, order).unwrap(),
                parse_poly::<Rat>(fy, &ctx, order).unwrap(),
            ],
        );
        let basis = eliminate(&sys, &["t"]);
        for i in 0..1000i64 {
            let t = (i - 500) as f64 / 50.0;
            let (x, y) = if fx.contains("t^2") {
                (t * t, t * t * t)
            } else {
                (t, t * t)
            };
            for g in basis.gens() {
                let v = g.eval_f64(&[x, y]);
                let scale = 1.0 + x.abs().max(y.abs()).powi(3);
                assert!(v.abs() < 1e-9 * scale, "residual {v} at t = {t}");
            }
        }
    }
}

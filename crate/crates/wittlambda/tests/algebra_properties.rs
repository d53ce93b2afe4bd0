//! Property tests for the exact polynomial/quotient-ring substrate.

use num_bigint::BigInt;
use proptest::prelude::*;

use wittlambda::parse::parse_poly;
use wittlambda::poly::{Mono, Poly, Vars};
use wittlambda::ring::RingPresentation;
use wittlambda::scalar::BaseRing;

fn arb_poly() -> impl Strategy<Value = Poly> {
    // up to 6 terms in x, y with exponents <= 5 and coefficients in +-50
    let term = (0i32..=5, 0i32..=5, -50i64..=50);
    proptest::collection::vec(term, 0..6).prop_map(|terms| {
        let vars = Vars::new(&["x", "y"]);
        Poly::from_terms(
            &vars,
            terms
                .into_iter()
                .map(|(a, b, c)| (Mono(vec![a, b]), BigInt::from(c))),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Poly::zero(a.vars()));
        prop_assert_eq!(a.mul(&Poly::one(a.vars())), a.clone());
    }

    #[test]
    fn display_parse_round_trip(a in arb_poly()) {
        let text = a.to_string();
        let back = parse_poly(a.vars(), &text).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn exact_div_inverts_scaling(a in arb_poly(), n in 1i64..=20) {
        let scaled = a.scale(&BigInt::from(n));
        prop_assert_eq!(scaled.exact_div(&BigInt::from(n)).unwrap(), a);
    }

    #[test]
    fn normal_form_is_a_ring_hom(a in arb_poly(), b in arb_poly()) {
        // Z[x,y]/(x^3 - x, y^2 - 1)
        let vars = Vars::new(&["x", "y"]);
        let rels = vec![
            parse_poly(&vars, "x^3 - x").unwrap(),
            parse_poly(&vars, "y^2 - 1").unwrap(),
        ];
        let pres = RingPresentation::new(BaseRing::Int, vars.clone(), rels).unwrap();
        let a = a.embed(&vars).unwrap();
        let b = b.embed(&vars).unwrap();
        let sum = pres.normal_form(&a.add(&b));
        let sum2 = pres.normal_form(&pres.normal_form(&a).add(&pres.normal_form(&b)));
        prop_assert_eq!(sum, sum2);
        let prod = pres.normal_form(&a.mul(&b));
        let prod2 = pres.normal_form(&pres.normal_form(&a).mul(&pres.normal_form(&b)));
        prop_assert_eq!(prod.clone(), prod2);
        // idempotence
        prop_assert_eq!(pres.normal_form(&prod), prod);
    }

    #[test]
    fn quotient_arithmetic_matches_evaluation(a in arb_poly(), b in arb_poly()) {
        // in Z[x,y]/(x^2 - x, y^3 - y) every point of F_7 with x^2 = x,
        // y^3 = y must agree before and after reduction
        let vars = Vars::new(&["x", "y"]);
        let rels = vec![
            parse_poly(&vars, "x^2 - x").unwrap(),
            parse_poly(&vars, "y^3 - y").unwrap(),
        ];
        let pres = RingPresentation::new(BaseRing::Int, vars.clone(), rels).unwrap();
        let a = a.embed(&vars).unwrap();
        let b = b.embed(&vars).unwrap();
        let prod_nf = pres.normal_form(&a.mul(&b));
        let ring = BaseRing::Mod(7);
        for pt in pres.enumerate_points(&ring, 1000).unwrap() {
            let direct = a.eval(&ring, &pt).unwrap().mul(&b.eval(&ring, &pt).unwrap());
            let reduced = prod_nf.eval(&ring, &pt).unwrap();
            prop_assert_eq!(direct, reduced);
        }
    }
}

#[test]
fn laurent_normal_forms() {
    let vars = Vars::with_laurent(&["t"], &[true]);
    let pres = RingPresentation::free(BaseRing::Int, vars.clone());
    let e = parse_poly(&vars, "(t + t^-1)^2 - t^2 - t^-2").unwrap();
    assert_eq!(pres.normal_form(&e).to_string(), "2");
}

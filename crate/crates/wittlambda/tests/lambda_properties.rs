//! Property tests for lambda-structures and the F_1 layer.

use num_bigint::BigInt;
use proptest::prelude::*;

use wittlambda::f1::fan::fixtures;
use wittlambda::lambda::{dickson_poly, lambda_from_psi, LambdaStructure};
use wittlambda::monoid::MonoidPresentation;
use wittlambda::poly::{Mono, Poly, Subst};
use wittlambda::scalar::BaseRing;

fn chebychev() -> LambdaStructure {
    LambdaStructure::chebychev().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn psi_is_multiplicative_in_the_index(
        coeffs in proptest::collection::vec(-9i64..=9, 4),
        m in prop_oneof![Just(2u64), Just(3)],
        n in prop_oneof![Just(2u64), Just(3), Just(5)],
    ) {
        let l = chebychev();
        let vars = l.ring().vars();
        let a = Poly::from_terms(
            vars,
            coeffs.iter().enumerate().map(|(i, &c)| (Mono(vec![i as i32]), BigInt::from(c))),
        );
        let lhs = l.apply_psi(m * n, &a).unwrap();
        let rhs = l.apply_psi(m, &l.apply_psi(n, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_is_a_ring_map(
        ca in proptest::collection::vec(-5i64..=5, 3),
        cb in proptest::collection::vec(-5i64..=5, 3),
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
    ) {
        let l = chebychev();
        let vars = l.ring().vars();
        let mk = |cs: &[i64]| {
            Poly::from_terms(
                vars,
                cs.iter().enumerate().map(|(i, &c)| (Mono(vec![i as i32]), BigInt::from(c))),
            )
        };
        let (a, b) = (mk(&ca), mk(&cb));
        prop_assert_eq!(
            l.apply_psi(p, &a.add(&b)).unwrap(),
            l.apply_psi(p, &a).unwrap().add(&l.apply_psi(p, &b).unwrap())
        );
        prop_assert_eq!(
            l.apply_psi(p, &a.mul(&b)).unwrap(),
            l.apply_psi(p, &a).unwrap().mul(&l.apply_psi(p, &b).unwrap())
        );
    }
}

#[test]
fn dickson_is_psi_on_the_chebychev_line() {
    let l = chebychev();
    let x = Poly::var(l.ring().vars(), 0);
    for n in [4u64, 6, 8, 9, 10, 12, 15, 20] {
        assert_eq!(l.apply_psi(n, &x).unwrap(), dickson_poly(n), "psi_{n} = D_{n}");
    }
}

#[test]
fn lambda_vanishing_beyond_degree_one_on_monomials() {
    // on the toric line lambda_n(x) = 0 for n >= 2; on products of two
    // generators lambda_2(xy) = 0 likewise
    let l = LambdaStructure::toric("A2", &MonoidPresentation::free(2, 0)).unwrap();
    let x = Poly::var(l.ring().vars(), 0);
    let y = Poly::var(l.ring().vars(), 1);
    let xy = x.mul(&y);
    for n in 2..=5 {
        assert!(lambda_from_psi(&l, n, &xy).unwrap().is_zero());
    }
    assert_eq!(lambda_from_psi(&l, 1, &xy).unwrap(), xy);
}

#[test]
fn newton_lambda_on_chebychev_generator() {
    // lambda_2(x) = (x^2 - psi_2(x)) / 2 = (x^2 - x^2 + 2)/2 = 1
    let l = chebychev();
    let x = Poly::var(l.ring().vars(), 0);
    let l2 = lambda_from_psi(&l, 2, &x).unwrap();
    assert_eq!(l2.to_string(), "1");
}

#[test]
fn chart_point_enumeration_matches_orbit_formula() {
    // for every maximal cone of each test fan, enumerating the points of
    // the chart monoid algebra over F_q matches q^d (q-1)^(n-d), and the
    // sum of the orbit formula over the faces of the cone
    for fan in [
        fixtures::affine_space(1),
        fixtures::affine_space(2),
        fixtures::projective_space(1),
        fixtures::projective_space(2),
        fixtures::p1xp1(),
    ] {
        for q in [2u64, 3] {
            let ring = BaseRing::Mod(q);
            for &ci in &fan.maximal_cones() {
                let (d, torus) = fan.chart_shape(ci);
                let m = MonoidPresentation::free(d, torus);
                let alg = m.algebra().unwrap();
                let pts = alg.enumerate_points(&ring, 10_000_000).unwrap();
                let expected = q.pow(d as u32) * (q - 1).pow(torus as u32);
                assert_eq!(pts.len() as u64, expected);
                // orbit formula over the faces of this cone
                let orbit: u64 = fan
                    .cones()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| fan.is_face(*j, ci))
                    .map(|(j, _)| (q - 1).pow((fan.rank() - fan.cone_dim(j)) as u32))
                    .sum();
                assert_eq!(pts.len() as u64, orbit);
            }
        }
    }
}

#[test]
fn toric_structures_respect_monoid_relations() {
    // mu_n: psi_p permutes the n-th roots; psi_n collapses to 1
    for n in [2u64, 3, 4, 6] {
        let l = LambdaStructure::toric("mu", &MonoidPresentation::cyclic(n)).unwrap();
        let x = Poly::var(l.ring().vars(), 0);
        let psi_n = l.apply_psi(n, &x).unwrap();
        assert_eq!(psi_n.to_string(), "1", "psi_{n} on mu_{n}");
    }
}

#[test]
fn gm_involution_generates_chebychev() {
    // the fixed elements x_k = t^k + t^-k of the involution t -> 1/t
    // satisfy x_k = D_k(x_1): the Chebychev structure is the invariant
    // subring of the toric structure
    let vars = wittlambda::poly::Vars::with_laurent(&["t"], &[true]);
    let t = Poly::var(&vars, 0);
    let tinv = Poly::monomial(&vars, Mono(vec![-1]), BigInt::from(1));
    let x1 = t.add(&tinv);
    for k in 1..=12u64 {
        let xk = Poly::monomial(&vars, Mono(vec![k as i32]), BigInt::from(1)).add(
            &Poly::monomial(&vars, Mono(vec![-(k as i32)]), BigInt::from(1)),
        );
        let dk = dickson_poly(k).substitute(&[Subst::of(x1.clone())]).unwrap();
        assert_eq!(dk, xk, "D_{k}(t + 1/t) = t^{k} + t^-{k}");
    }
}

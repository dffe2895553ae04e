mod common;

use common::{basis, class_on, even_class};
use mukai::charclasses::{mukai_vector, KExpr};
use mukai::cohomology::{diagonal_class, diagonal_pushforward, k3, product, projective_space, torus, Factor};
use mukai::transforms::{
    apply_transform, apply_transform_backward, compose_kernels, verify_adjointness, verify_composition, verify_isometry, Side,
};
use mukai::{CohClass, GaussRat, SpaceRef};
use proptest::prelude::*;

fn small_spaces() -> Vec<SpaceRef> {
    vec![projective_space(1), projective_space(2), torus(1), torus(2), k3()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonal_acts_as_identity(v in proptest::sample::select(small_spaces()).prop_flat_map(class_on)) {
        let delta = diagonal_class(v.space()).unwrap();
        prop_assert_eq!(apply_transform(&delta, &v).unwrap(), v.clone());
        prop_assert_eq!(apply_transform_backward(&delta, &v).unwrap(), v);
    }

    #[test]
    fn diagonal_pairs_like_the_cup_product(
        (a, b) in proptest::sample::select(small_spaces()).prop_flat_map(|x| (class_on(x.clone()), class_on(x)))
    ) {
        let delta = diagonal_class(a.space()).unwrap();
        let xx = delta.space().clone();
        let pa = CohClass::pullback(&xx, Factor::First, &a).unwrap();
        let pb = CohClass::pullback(&xx, Factor::Second, &b).unwrap();
        prop_assert_eq!(pa.mul(&delta).unwrap().mul(&pb).unwrap().integrate(), a.mul(&b).unwrap().integrate());
        // Delta_*(a) acts as multiplication by a
        prop_assert_eq!(apply_transform(&diagonal_pushforward(&a).unwrap(), &b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn diagonal_is_neutral_for_composition(mu in class_on(product(&torus(1), &projective_space(1)))) {
        let (x, y) = mu.space().factors().unwrap().clone();
        prop_assert_eq!(compose_kernels(&diagonal_class(&x).unwrap(), &mu).unwrap(), mu.clone());
        prop_assert_eq!(compose_kernels(&mu, &diagonal_class(&y).unwrap()).unwrap(), mu);
    }

    #[test]
    fn composition_with_odd_cohomology(
        (mu, nu, kappa) in (
            class_on(product(&torus(1), &projective_space(1))),
            class_on(product(&projective_space(1), &torus(1))),
            class_on(product(&torus(1), &torus(1))),
        )
    ) {
        prop_assert!(verify_composition(&mu, &nu, "random").unwrap().passed());
        let left = compose_kernels(&compose_kernels(&mu, &nu).unwrap(), &kappa).unwrap();
        let right = compose_kernels(&mu, &compose_kernels(&nu, &kappa).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn adjointness_for_even_kernels_on_tori(e in even_class(product(&torus(1), &torus(1)))) {
        for side in [Side::Left, Side::Right] {
            let r = verify_adjointness(&e, "random even", side).unwrap();
            prop_assert!(r.passed(), "{}", r.to_json());
        }
    }

    #[test]
    fn adjointness_for_even_kernels_on_mixed(e in even_class(product(&torus(1), &projective_space(2)))) {
        for side in [Side::Left, Side::Right] {
            let r = verify_adjointness(&e, "random even", side).unwrap();
            prop_assert!(r.passed(), "{}", r.to_json());
        }
    }
}

#[test]
fn twists_are_isometries() {
    for x in [projective_space(1), projective_space(3), torus(2)] {
        let xx = product(&x, &x);
        let h = mukai::suites::polarization(&x);
        for d in [-2i64, 1, 3] {
            let twist = |s: i64| {
                let l = KExpr::line_bundle(h.scale(&GaussRat::from_int(s))).unwrap();
                let ch = mukai::charclasses::chern_character(&l).unwrap();
                diagonal_pushforward(&ch).unwrap()
            };
            let r = verify_isometry(&twist(d), &twist(-d), "twist").unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert_eq!(r.cases_total, x.len() * x.len());
            assert_eq!(twist(d).space().name(), xx.name());
        }
    }
}

#[test]
fn mukai_vector_kernels_are_functorial() {
    let (p1, p2) = (projective_space(1), projective_space(2));
    for a in -1..=1 {
        for b in -1..=1 {
            let e1 = KExpr::external(
                &product(&p1, &p2),
                KExpr::line_bundle(basis(&p1)[1].scale(&a.into())).unwrap(),
                KExpr::structure(&p2),
            )
            .unwrap();
            let e2 = KExpr::external(
                &product(&p2, &p1),
                KExpr::structure(&p2),
                KExpr::line_bundle(basis(&p1)[1].scale(&b.into())).unwrap(),
            )
            .unwrap();
            let r = mukai::transforms::functoriality_check(&e1, &e2).unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert!(mukai_vector(&e1).unwrap().is_even());
        }
    }
}

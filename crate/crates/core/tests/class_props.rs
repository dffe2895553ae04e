mod common;

use common::{basis, class_on, even_class, unit_class};
use mukai::charclasses::{dualize, series_exp, series_inverse, series_log, series_sqrt, tau};
use mukai::cohomology::{k3, product, projective_space, torus, Factor};
use mukai::{CohClass, SpaceRef};
use proptest::prelude::*;

fn spaces() -> Vec<SpaceRef> {
    vec![projective_space(2), projective_space(4), torus(1), torus(2), k3(), product(&torus(1), &projective_space(1))]
}

fn any_space() -> impl Strategy<Value = SpaceRef> {
    proptest::sample::select(spaces())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in any_space().prop_flat_map(|x| (class_on(x.clone()), class_on(x.clone()), class_on(x)))) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&CohClass::one(a.space())).unwrap(), a.clone());
    }

    #[test]
    fn even_classes_are_central((a, b) in any_space().prop_flat_map(|x| (even_class(x.clone()), class_on(x)))) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn series_identities(u in any_space().prop_flat_map(unit_class)) {
        let x = u.space().clone();
        let r = series_sqrt(&u).unwrap();
        prop_assert_eq!(r.mul(&r).unwrap(), u.clone());
        prop_assert_eq!(u.mul(&series_inverse(&u).unwrap()).unwrap(), CohClass::one(&x));
        prop_assert_eq!(series_exp(&series_log(&u).unwrap()).unwrap(), u.clone());
        let n = u.sub(&CohClass::one(&x)).unwrap();
        prop_assert_eq!(series_log(&series_exp(&n).unwrap()).unwrap(), n);
    }

    #[test]
    fn sqrt_is_multiplicative_on_even_classes(
        (u, v) in any_space().prop_flat_map(|x| (unit_class(x.clone()), unit_class(x)))
    ) {
        let x = u.space().clone();
        let even = |c: &CohClass| c.filter(|k| !x.element(k).is_odd());
        let (u, v) = (even(&u), even(&v));
        let lhs = series_sqrt(&u.mul(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, series_sqrt(&u).unwrap().mul(&series_sqrt(&v).unwrap()).unwrap());
    }

    #[test]
    fn tau_is_a_ring_map((a, b) in any_space().prop_flat_map(|x| (class_on(x.clone()), class_on(x)))) {
        prop_assert_eq!(tau(&a.mul(&b).unwrap()), tau(&a).mul(&tau(&b)).unwrap());
        prop_assert_eq!(tau(&a.add(&b).unwrap()), tau(&a).add(&tau(&b)).unwrap());
    }

    #[test]
    fn tau_squares_to_identity_on_even(a in any_space().prop_flat_map(even_class)) {
        prop_assert_eq!(tau(&tau(&a)), a.clone());
        // the dual is an involution up to the canonical twist, which is trivial here
        if a.space().name() == "K3" || a.space().name().starts_with('T') {
            prop_assert_eq!(dualize(&dualize(&a)), a);
        }
    }
}

fn projection_formula(x: SpaceRef, y: SpaceRef) -> impl Strategy<Value = (CohClass, CohClass, CohClass)> {
    let xy = product(&x, &y);
    (class_on(x), class_on(y), class_on(xy))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_formula_p1_p2((a, b, w) in projection_formula(projective_space(1), projective_space(2))) {
        check_projection(&a, &b, &w)?;
    }

    #[test]
    fn projection_formula_t1_p1((a, b, w) in projection_formula(torus(1), projective_space(1))) {
        check_projection(&a, &b, &w)?;
    }

    #[test]
    fn projection_formula_t1_t1((a, b, w) in projection_formula(torus(1), torus(1))) {
        check_projection(&a, &b, &w)?;
    }
}

fn check_projection(a: &CohClass, b: &CohClass, w: &CohClass) -> Result<(), TestCaseError> {
    let xy = w.space();
    let pa = CohClass::pullback(xy, Factor::First, a).unwrap();
    let pb = CohClass::pullback(xy, Factor::Second, b).unwrap();
    let push1 = |c: &CohClass| c.pushforward(Factor::First).unwrap();
    let push2 = |c: &CohClass| c.pushforward(Factor::Second).unwrap();
    prop_assert_eq!(push1(&pa.mul(w).unwrap()), a.mul(&push1(w)).unwrap());
    prop_assert_eq!(push1(&w.mul(&pa).unwrap()), push1(w).mul(a).unwrap());
    prop_assert_eq!(push2(&pb.mul(w).unwrap()), b.mul(&push2(w)).unwrap());
    prop_assert_eq!(push2(&w.mul(&pb).unwrap()), push2(w).mul(b).unwrap());
    // integration factors through either projection
    prop_assert_eq!(push1(w).integrate(), w.integrate());
    prop_assert_eq!(push2(w).integrate(), w.integrate());
    Ok(())
}

#[test]
fn pullbacks_are_ring_maps() {
    for (x, y) in [(projective_space(1), projective_space(2)), (torus(1), torus(1)), (k3(), projective_space(1))] {
        let xy = product(&x, &y);
        for a in basis(&x) {
            for b in basis(&x) {
                let lhs = CohClass::pullback(&xy, Factor::First, &a.mul(&b).unwrap()).unwrap();
                let pa = CohClass::pullback(&xy, Factor::First, &a).unwrap();
                let pb = CohClass::pullback(&xy, Factor::First, &b).unwrap();
                assert_eq!(lhs, pa.mul(&pb).unwrap());
            }
        }
        for c in basis(&y) {
            for d in basis(&y) {
                let lhs = CohClass::pullback(&xy, Factor::Second, &c.mul(&d).unwrap()).unwrap();
                let pc = CohClass::pullback(&xy, Factor::Second, &c).unwrap();
                let pd = CohClass::pullback(&xy, Factor::Second, &d).unwrap();
                assert_eq!(lhs, pc.mul(&pd).unwrap());
            }
        }
    }
}

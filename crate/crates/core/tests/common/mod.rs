#![allow(dead_code)]

use mukai::cohomology::BasisElement;
use mukai::{CohClass, GaussRat, SpaceRef};
use proptest::prelude::*;

pub fn gauss() -> impl Strategy<Value = GaussRat> {
    (-9i64..=9, 1i64..=4, -3i64..=3, 1i64..=2, 0u8..4).prop_map(|(a, b, c, d, imag)| {
        let re = GaussRat::ratio(a, b);
        if imag == 0 {
            &re + &(&GaussRat::ratio(c, d) * &GaussRat::i())
        } else {
            re
        }
    })
}

/// Random class on `space` supported on the basis elements accepted by `keep`.
pub fn class_where(space: SpaceRef, keep: fn(&BasisElement) -> bool) -> impl Strategy<Value = CohClass> {
    let n = space.len();
    proptest::collection::vec(proptest::option::weighted(0.5, gauss()), n).prop_map(move |coeffs| {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(k, _)| keep(space.element(*k)))
            .filter_map(|(k, c)| c.map(|c| (k, c)));
        CohClass::new(&space, terms).unwrap()
    })
}

pub fn class_on(space: SpaceRef) -> impl Strategy<Value = CohClass> {
    class_where(space, |_| true)
}

pub fn even_class(space: SpaceRef) -> impl Strategy<Value = CohClass> {
    class_where(space, |e| !e.is_odd())
}

/// `1 + n` with `n` of positive degree.
pub fn unit_class(space: SpaceRef) -> impl Strategy<Value = CohClass> {
    class_where(space, |e| e.degree() > 0).prop_map(|n| CohClass::one(n.space()).add(&n).unwrap())
}

pub fn basis(space: &SpaceRef) -> Vec<CohClass> {
    (0..space.len()).map(|k| CohClass::basis(space, k).unwrap()).collect()
}

//! Characteristic classes: Chern character, Todd class, the involution
//! `tau`, the dual `v -> v^vee` and Mukai vectors.

mod kexpr;
mod series;

pub use kexpr::KExpr;
pub use series::{series_exp, series_inverse, series_log, series_sqrt};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeffs::GaussRat;
use crate::cohomology::{CohClass, Factor, SpaceRef};
use crate::error::Result;

/// Multiplies the total-degree-`k` component by `i^k`.
pub fn tau(v: &CohClass) -> CohClass {
    let space = v.space().clone();
    v.map(|k, c| &GaussRat::i_pow(i64::from(space.element(k).degree())) * c)
}

/// Chern classes `c_1..c_n` of the tangent bundle (`c_k` in degree `2k`).
fn tangent_chern_classes(x: &SpaceRef) -> Vec<CohClass> {
    let total = CohClass::tangent_chern(x);
    (0..=x.dim()).map(|k| total.degree_part(2 * k)).collect()
}

/// Power sums `p_1..p_n` of the Chern roots of `T_X` (index 0 unused),
/// from Newton's identities
/// `p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k`.
fn tangent_power_sums(x: &SpaceRef) -> Vec<CohClass> {
    let c = tangent_chern_classes(x);
    let n = x.dim() as usize;
    let mut p = vec![CohClass::zero(x); n + 1];
    for k in 1..=n {
        let sign = |j: usize| GaussRat::from_int(if j % 2 == 1 { 1 } else { -1 });
        let mut acc = c[k].scale(&(&sign(k) * &GaussRat::from_int(k as i64)));
        for i in 1..k {
            acc = acc.add(&c[i].mul(&p[k - i]).expect("same space").scale(&sign(i))).expect("same space");
        }
        p[k] = acc;
    }
    p
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, j| acc * j)
}

/// `ch(T_X) = dim X + sum_k p_k / k!`.
pub fn tangent_chern_character(x: &SpaceRef) -> CohClass {
    let p = tangent_power_sums(x);
    let mut acc = CohClass::scalar(x, GaussRat::from_int(i64::from(x.dim())));
    for (k, pk) in p.iter().enumerate().skip(1) {
        let c = GaussRat::from_rational(BigRational::new(BigInt::from(1), factorial(k)));
        acc = acc.add(&pk.scale(&c)).expect("same space");
    }
    acc
}

/// First Chern class of the tangent bundle.
pub fn first_chern_class(x: &SpaceRef) -> CohClass {
    CohClass::tangent_chern(x).degree_part(2)
}

/// `ch(omega_X) = exp(-c_1(T_X))`.
pub fn canonical_chern_character(x: &SpaceRef) -> CohClass {
    series_exp(&first_chern_class(x).neg()).expect("c_1 has no constant term")
}

/// `sqrt(ch(omega_X))`.
pub fn sqrt_canonical(x: &SpaceRef) -> CohClass {
    series_sqrt(&canonical_chern_character(x)).expect("unit constant term")
}

/// `1 / sqrt(ch(omega_X))`.
pub fn inv_sqrt_canonical(x: &SpaceRef) -> CohClass {
    series_inverse(&sqrt_canonical(x)).expect("unit constant term")
}

/// `Td(X) = exp(sum_k a_k p_k)` where `sum_k a_k t^k = log(t / (1 - e^{-t}))`.
pub fn todd(x: &SpaceRef) -> CohClass {
    let n = x.dim() as usize;
    let a = series::todd_log_coefficients(n);
    let p = tangent_power_sums(x);
    let mut exponent = CohClass::zero(x);
    for k in 1..=n {
        exponent = exponent.add(&p[k].scale(&GaussRat::from_rational(a[k].clone()))).expect("same space");
    }
    series_exp(&exponent).expect("power sums have no constant term")
}

pub fn sqrt_todd(x: &SpaceRef) -> CohClass {
    series_sqrt(&todd(x)).expect("Todd class has constant term 1")
}

/// `v^vee = tau(v) / sqrt(ch(omega_X))`.
pub fn dualize(v: &CohClass) -> CohClass {
    tau(v).mul(&inv_sqrt_canonical(v.space())).expect("same space")
}

/// Chern character of a K-theory expression.
pub fn chern_character(e: &KExpr) -> Result<CohClass> {
    Ok(match e {
        KExpr::Structure(x) => CohClass::one(x),
        KExpr::LineBundle(c1) => series_exp(c1)?,
        KExpr::Tangent(x) => tangent_chern_character(x),
        KExpr::Dual(inner) => tau(&chern_character(inner)?),
        KExpr::Tensor(a, b) => chern_character(a)?.mul(&chern_character(b)?)?,
        KExpr::Sum(a, b) => chern_character(a)?.add(&chern_character(b)?)?,
        KExpr::Shift(inner, n) => {
            let ch = chern_character(inner)?;
            if n % 2 == 0 {
                ch
            } else {
                ch.neg()
            }
        }
        KExpr::ExternalTensor { space, left, right } => {
            let l = CohClass::pullback(space, Factor::First, &chern_character(left)?)?;
            let r = CohClass::pullback(space, Factor::Second, &chern_character(right)?)?;
            l.mul(&r)?
        }
    })
}

/// `v(E) = ch(E) . sqrt(Td(X))`.
pub fn mukai_vector(e: &KExpr) -> Result<CohClass> {
    chern_character(e)?.mul(&sqrt_todd(&e.space()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{k3, projective_space, torus};

    fn class(space: &SpaceRef, coeffs: &[GaussRat]) -> CohClass {
        CohClass::new(space, coeffs.iter().cloned().enumerate()).unwrap()
    }

    fn h(space: &SpaceRef, d: i64) -> CohClass {
        CohClass::basis(space, 1).unwrap().scale(&d.into())
    }

    #[test]
    fn chern_character_examples() {
        let p1 = projective_space(1);
        for d in -3..=3 {
            let l = KExpr::line_bundle(h(&p1, d)).unwrap();
            assert_eq!(chern_character(&l).unwrap(), class(&p1, &[1.into(), d.into()]));
            let dual = chern_character(&KExpr::dual(l.clone())).unwrap();
            assert_eq!(dual, class(&p1, &[1.into(), (-d).into()]));
            assert_eq!(dual, tau(&chern_character(&l).unwrap()));
        }
        let p2 = projective_space(2);
        let t = chern_character(&KExpr::tangent(&p2)).unwrap();
        // rank 2 plus the power sums p_1 = 3H, p_2 = 3H^2
        assert_eq!(t, class(&p2, &[2.into(), 3.into(), GaussRat::ratio(3, 2)]));
        // Euler sequence oracle: ch(T) = 3 ch(O(1)) - 1
        let o1 = chern_character(&line_p2(&p2)).unwrap();
        assert_eq!(t, o1.scale(&3.into()).sub(&CohClass::one(&p2)).unwrap());
    }

    fn line_p2(p2: &SpaceRef) -> KExpr {
        KExpr::line_bundle(h(p2, 1)).unwrap()
    }

    #[test]
    fn shift_and_sum() {
        let p1 = projective_space(1);
        let l = KExpr::line_bundle(h(&p1, 2)).unwrap();
        let e = KExpr::shift(KExpr::dual(l), 1);
        assert_eq!(chern_character(&e).unwrap(), class(&p1, &[(-1).into(), 2.into()]));
        let s = KExpr::sum(KExpr::structure(&p1), KExpr::shift(KExpr::structure(&p1), 2)).unwrap();
        assert_eq!(chern_character(&s).unwrap(), CohClass::scalar(&p1, 2.into()));
        assert!(KExpr::sum(KExpr::structure(&p1), KExpr::structure(&projective_space(2))).is_err());
    }

    #[test]
    fn line_bundle_rejects_wrong_bidegree() {
        let t = torus(1);
        let a = CohClass::basis(&t, 1).unwrap();
        assert!(matches!(KExpr::line_bundle(a), Err(crate::Error::Bidegree(_))));
    }

    #[test]
    fn todd_examples() {
        let p1 = projective_space(1);
        assert_eq!(todd(&p1), class(&p1, &[1.into(), 1.into()]));
        let p2 = projective_space(2);
        assert_eq!(todd(&p2), class(&p2, &[1.into(), GaussRat::ratio(3, 2), 1.into()]));
        let x = k3();
        let expected = CohClass::one(&x).add(&CohClass::point(&x).scale(&2.into())).unwrap();
        assert_eq!(todd(&x), expected);
        assert_eq!(todd(&torus(2)), CohClass::one(&torus(2)));
    }

    #[test]
    fn tau_examples() {
        let x = k3();
        let v = CohClass::new(&x, [(0, 3.into()), (2, 5.into()), (23, 7.into())]).unwrap();
        let expected = CohClass::new(&x, [(0, 3.into()), (2, (-5).into()), (23, 7.into())]).unwrap();
        assert_eq!(tau(&v), expected);
        let t = torus(1);
        let a = CohClass::basis(&t, 1).unwrap();
        assert_eq!(tau(&a), a.scale(&GaussRat::i()));
        assert_eq!(tau(&tau(&a)), a.neg());
    }

    #[test]
    fn dualize_examples() {
        let x = k3();
        let v = CohClass::new(&x, [(0, 3.into()), (5, 1.into()), (23, 2.into())]).unwrap();
        assert_eq!(dualize(&v), tau(&v));

        let p1 = projective_space(1);
        for a in -3..=3 {
            let half = GaussRat::ratio(1, 2);
            let v = class(&p1, &[1.into(), &GaussRat::from_int(a) + &half]);
            assert_eq!(dualize(&v), class(&p1, &[1.into(), &half - &GaussRat::from_int(a)]));
        }
        let p2 = projective_space(2);
        let one = CohClass::one(&p2);
        assert_eq!(dualize(&one), class(&p2, &[1.into(), GaussRat::ratio(3, 2), GaussRat::ratio(9, 8)]));
    }

    #[test]
    fn mukai_vector_examples() {
        let x = k3();
        let v = mukai_vector(&KExpr::structure(&x)).unwrap();
        assert_eq!(v, CohClass::one(&x).add(&CohClass::point(&x)).unwrap());
        let p1 = projective_space(1);
        for d in -2..=2 {
            let v = mukai_vector(&KExpr::line_bundle(h(&p1, d)).unwrap()).unwrap();
            assert_eq!(v, class(&p1, &[1.into(), &GaussRat::from_int(d) + &GaussRat::ratio(1, 2)]));
        }
    }
}

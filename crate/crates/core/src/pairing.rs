//! The generalized Mukai pairing, the Euler pairing via
//! Hirzebruch-Riemann-Roch, the Weyl-operator pairing and the column
//! decomposition `H Omega_i = sum_{q-p=i} H^{p,q}`.

use crate::charclasses::{chern_character, dualize, tau, todd, KExpr};
use crate::coeffs::{GaussRat, Matrix};
use crate::cohomology::{check_same, CohClass, SpaceRef};
use crate::error::Result;

/// `<v, w> = int_X v^vee . w`.
pub fn mukai_pairing(v: &CohClass, w: &CohClass) -> Result<GaussRat> {
    check_same(v.space(), w.space())?;
    Ok(dualize(v).mul(w)?.integrate())
}

/// `chi(E, F) = int_X ch(E)^tau . ch(F) . Td(X)`.
pub fn euler_pairing(e: &KExpr, f: &KExpr) -> Result<GaussRat> {
    let x = e.space();
    check_same(&x, &f.space())?;
    Ok(tau(&chern_character(e)?).mul(&chern_character(f)?)?.mul(&todd(&x))?.integrate())
}

/// The Weyl operator: multiplies the `(p,q)` component by `i^{p-q}`.
pub fn weyl_operator(v: &CohClass) -> CohClass {
    let space = v.space().clone();
    v.map(|k, c| {
        let e = space.element(k);
        &GaussRat::i_pow(i64::from(e.p) - i64::from(e.q)) * c
    })
}

/// `int_X weyl(v) . w`.
pub fn hodge_weyl_pairing(v: &CohClass, w: &CohClass) -> Result<GaussRat> {
    check_same(v.space(), w.space())?;
    Ok(weyl_operator(v).mul(w)?.integrate())
}

/// The components of `v` with `q - p = column`.
pub fn column_projection(v: &CohClass, column: i64) -> CohClass {
    let space = v.space().clone();
    v.filter(|k| {
        let e = space.element(k);
        i64::from(e.q) - i64::from(e.p) == column
    })
}

/// Columns that can be nonzero on `x`, i.e. `-dim..=dim`.
pub fn columns(x: &SpaceRef) -> std::ops::RangeInclusive<i64> {
    let n = i64::from(x.dim());
    -n..=n
}

/// Gram matrix `<e_i, e_j>` of the Mukai pairing on the basis.
pub fn mukai_gram(x: &SpaceRef) -> Result<Matrix> {
    let basis: Vec<CohClass> = (0..x.len()).map(|i| CohClass::basis(x, i)).collect::<Result<_>>()?;
    let duals: Vec<CohClass> = basis.iter().map(dualize).collect();
    duals
        .iter()
        .map(|d| basis.iter().map(|w| Ok(d.mul(w)?.integrate())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclasses::mukai_vector;
    use crate::cohomology::{k3, projective_space, torus};

    fn line(x: &SpaceRef, d: i64) -> KExpr {
        KExpr::line_bundle(CohClass::basis(x, 1).unwrap().scale(&d.into())).unwrap()
    }

    #[test]
    fn k3_structure_sheaf() {
        let x = k3();
        let o = KExpr::structure(&x);
        let v = mukai_vector(&o).unwrap();
        assert_eq!(mukai_pairing(&v, &v).unwrap(), GaussRat::from_int(2));
        assert_eq!(euler_pairing(&o, &o).unwrap(), GaussRat::from_int(2));
    }

    #[test]
    fn p1_line_bundles() {
        let p1 = projective_space(1);
        for a in -3..=3 {
            for b in -3..=3 {
                let (ea, eb) = (line(&p1, a), line(&p1, b));
                let expected = GaussRat::from_int(b - a + 1);
                let va = mukai_vector(&ea).unwrap();
                let vb = mukai_vector(&eb).unwrap();
                assert_eq!(mukai_pairing(&va, &vb).unwrap(), expected);
                assert_eq!(euler_pairing(&ea, &eb).unwrap(), expected);
            }
        }
    }

    #[test]
    fn euler_examples() {
        let p2 = projective_space(2);
        for d in -4..=4 {
            let chi = euler_pairing(&KExpr::structure(&p2), &line(&p2, d)).unwrap();
            assert_eq!(chi, GaussRat::from_int((d + 1) * (d + 2) / 2));
        }
        let t = torus(1);
        assert_eq!(euler_pairing(&KExpr::structure(&t), &KExpr::structure(&t)).unwrap(), GaussRat::zero());
    }

    #[test]
    fn top_degree_pairing() {
        let p2 = projective_space(2);
        assert_eq!(mukai_pairing(&CohClass::one(&p2), &CohClass::point(&p2)).unwrap(), GaussRat::one());
    }

    #[test]
    fn weyl_examples() {
        let p2 = projective_space(2);
        let h = CohClass::basis(&p2, 1).unwrap();
        assert_eq!(hodge_weyl_pairing(&h, &h).unwrap(), GaussRat::one());
        let t = torus(1);
        let (a, b) = (CohClass::basis(&t, 1).unwrap(), CohClass::basis(&t, 2).unwrap());
        assert_eq!(weyl_operator(&a), a.scale(&GaussRat::i()));
        assert_eq!(hodge_weyl_pairing(&a, &b).unwrap(), GaussRat::i());
    }

    #[test]
    fn columns_decompose() {
        let t = torus(1);
        let a = CohClass::basis(&t, 1).unwrap();
        assert_eq!(column_projection(&a, -1), a);
        assert!(column_projection(&a, 0).is_zero());
        let v = CohClass::new(&t, (0..4).map(|k| (k, GaussRat::from_int(k as i64 + 1)))).unwrap();
        let total = columns(&t).fold(CohClass::zero(&t), |acc, i| acc.add(&column_projection(&v, i)).unwrap());
        assert_eq!(total, v);
        let p3 = projective_space(3);
        let w = CohClass::new(&p3, (0..4).map(|k| (k, GaussRat::from_int(2 * k as i64 - 3)))).unwrap();
        assert_eq!(column_projection(&w, 0), w);
    }

    #[test]
    fn space_mismatch() {
        let p1 = projective_space(1);
        let p2 = projective_space(2);
        assert!(matches!(
            mukai_pairing(&CohClass::one(&p1), &CohClass::one(&p2)),
            Err(crate::Error::SpaceMismatch { .. })
        ));
    }
}

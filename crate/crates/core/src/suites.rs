//! Property suites over whole spaces: the `tau` identities, square-root
//! identities, Euler = Mukai, and randomized composition and column sweeps.
//! Each suite returns a [`Report`].

use std::ops::RangeInclusive;

use rand::Rng;

use crate::charclasses::{chern_character, mukai_vector, series_inverse, series_sqrt, tau, KExpr};
use crate::coeffs::GaussRat;
use crate::cohomology::{product, projective_space, BasisElement, CohClass, Factor, SpaceRef};
use crate::error::Result;
use crate::pairing::{euler_pairing, mukai_pairing};
use crate::transforms::{compose_kernels, verify_columns, verify_composition, Report};

/// A random coefficient `n/d + (m/e) i`, real three times out of four.
pub fn random_coeff<R: Rng>(rng: &mut R) -> GaussRat {
    let re = GaussRat::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
    if rng.gen_ratio(1, 4) {
        &re + &(&GaussRat::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)) * &GaussRat::i())
    } else {
        re
    }
}

/// A random class supported on the basis elements accepted by `keep`; each
/// accepted coefficient is nonzero with probability one half.
pub fn random_class<R: Rng>(x: &SpaceRef, rng: &mut R, keep: impl Fn(&BasisElement) -> bool) -> CohClass {
    let mut terms = Vec::new();
    for k in (0..x.len()).filter(|&k| keep(x.element(k))) {
        if rng.gen_bool(0.5) {
            terms.push((k, random_coeff(rng)));
        }
    }
    CohClass::new(x, terms).expect("indices in range")
}

/// `1 + n` with `n` random of positive degree.
pub fn random_unit_class<R: Rng>(x: &SpaceRef, rng: &mut R, even_only: bool) -> CohClass {
    let n = random_class(x, rng, |e| e.degree() > 0 && (!even_only || !e.is_odd()));
    CohClass::one(x).add(&n).expect("same space")
}

fn basis_classes(x: &SpaceRef) -> Vec<CohClass> {
    (0..x.len()).map(|k| CohClass::basis(x, k).expect("index in range")).collect()
}

fn sign(odd: bool) -> GaussRat {
    GaussRat::from_int(if odd { -1 } else { 1 })
}

/// The multiplicativity, square-root, involution, line-bundle, pullback and
/// pushforward identities of `tau` on `x`. Pullback and pushforward are
/// checked along both projections of `x x P1` and `P1 x x`.
pub fn tau_properties(x: &SpaceRef) -> Result<Report> {
    let mut report = Report::new("tau-props", &[x], "tau");
    let basis = basis_classes(x);
    let name = |k: usize| x.element(k).name.clone();

    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            report.record_eq(|| format!("tau(e*f) e={} f={}", name(i), name(j)), &tau(&a.mul(b)?), &tau(a).mul(&tau(b))?);
        }
    }

    let mut units: Vec<(String, CohClass)> = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        if x.element(k).degree() > 0 {
            units.push((format!("1+{}", name(k)), CohClass::one(x).add(b)?));
        }
    }
    let all = basis.iter().fold(CohClass::zero(x), |acc, b| acc.add(b).expect("same space"));
    units.push(("sum of basis".into(), all.add(&CohClass::one(x))?.sub(&CohClass::scalar(x, all.constant_term()))?));
    for (desc, u) in &units {
        report.record_eq(|| format!("tau(sqrt u) u={desc}"), &tau(&series_sqrt(u)?), &series_sqrt(&tau(u))?);
    }

    for (k, b) in basis.iter().enumerate() {
        if !x.element(k).is_odd() {
            report.record_eq(|| format!("tau(tau(v)) v={}", name(k)), &tau(&tau(b)), b);
        }
    }

    for (k, b) in basis.iter().enumerate() {
        let e = x.element(k);
        if e.p != 1 || e.q != 1 {
            continue;
        }
        for d in -2..=2 {
            let line = KExpr::line_bundle(b.scale(&d.into()))?;
            let ch = chern_character(&line)?;
            report.record_eq(|| format!("tau(ch L) L=O({d}*{})", e.name), &tau(&ch), &series_inverse(&ch)?);
            report.record_eq(|| format!("ch(dual L) L=O({d}*{})", e.name), &chern_character(&KExpr::dual(line))?, &tau(&ch));
        }
    }

    let p1 = projective_space(1);
    for (xy, factor) in [(product(x, &p1), Factor::First), (product(&p1, x), Factor::Second)] {
        for (k, b) in basis.iter().enumerate() {
            let lhs = tau(&CohClass::pullback(&xy, factor, b)?);
            let rhs = CohClass::pullback(&xy, factor, &tau(b))?;
            report.record_eq(|| format!("tau(pullback v) on {} v={}", xy.name(), name(k)), &lhs, &rhs);
        }
        let (a, c) = xy.factors().expect("product").clone();
        for (k, w) in basis_classes(&xy).iter().enumerate() {
            for (f, target) in [(Factor::First, &a), (Factor::Second, &c)] {
                let fiber_dim = xy.dim() - target.dim();
                let lhs = tau(w).pushforward(f)?;
                let rhs = tau(&w.pushforward(f)?).scale(&sign(fiber_dim % 2 == 1));
                report.record_eq(|| format!("pushforward(tau w) on {} w={}", xy.name(), xy.element(k).name), &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// `(sqrt u)^2 = u` and `tau(sqrt u) = sqrt(tau u)` for random unit-term
/// classes, and `sqrt(uv) = sqrt(u) sqrt(v)` for random even ones (even
/// classes are central, so the identity applies).
pub fn sqrt_properties<R: Rng>(x: &SpaceRef, rng: &mut R, count: usize) -> Result<Report> {
    let mut report = Report::new("sqrt-props", &[x], format!("{count} random unit-term classes"));
    for n in 0..count {
        let u = random_unit_class(x, rng, false);
        let r = series_sqrt(&u)?;
        report.record_eq(|| format!("(sqrt u)^2 = u, u={}", u.render()), &r.mul(&r)?, &u);
        report.record_eq(|| format!("tau(sqrt u), u={}", u.render()), &tau(&r), &series_sqrt(&tau(&u))?);
        let a = random_unit_class(x, rng, true);
        let b = random_unit_class(x, rng, true);
        let lhs = series_sqrt(&a.mul(&b)?)?;
        let rhs = series_sqrt(&a)?.mul(&series_sqrt(&b)?)?;
        report.record_eq(|| format!("sqrt(uv) case {n}, u={}, v={}", a.render(), b.render()), &lhs, &rhs);
    }
    Ok(report)
}

/// The class used to twist line bundles: the sum of the (1,1) basis elements.
pub fn polarization(x: &SpaceRef) -> CohClass {
    let terms = (0..x.len()).filter(|&k| x.element(k).p == 1 && x.element(k).q == 1).map(|k| (k, GaussRat::one()));
    CohClass::new(x, terms).expect("indices in range")
}

/// `chi(O(a h), O(b h)) = <v(O(a h)), v(O(b h))>` for all twists `a, b`.
pub fn euler_sweep(x: &SpaceRef, h: &CohClass, twists: RangeInclusive<i64>) -> Result<Report> {
    let mut report = Report::new("euler", &[x], format!("O(a*h), O(b*h) with h = {}", h.render()));
    let lines: Vec<(i64, KExpr, CohClass)> = twists
        .map(|a| {
            let e = KExpr::line_bundle(h.scale(&a.into()))?;
            let v = mukai_vector(&e)?;
            Ok((a, e, v))
        })
        .collect::<Result<_>>()?;
    for (a, ea, va) in &lines {
        for (b, eb, vb) in &lines {
            report.record_eq(|| format!("a={a}, b={b}"), &euler_pairing(ea, eb)?, &mukai_pairing(va, vb)?);
        }
    }
    Ok(report)
}

/// Random kernels `mu` on `X x Y`, `nu` on `Y x Z`, `kappa` on `Z x X`:
/// checks `phi^{nu o mu} = phi^nu o phi^mu` and
/// `kappa o (nu o mu) = (kappa o nu) o mu`.
pub fn composition_sweep<R: Rng>(x: &SpaceRef, y: &SpaceRef, z: &SpaceRef, rng: &mut R, count: usize) -> Result<Report> {
    let (xy, yz, zx) = (product(x, y), product(y, z), product(z, x));
    let mut report = Report::new("composition", &[x, y, z], format!("{count} random kernel triples"));
    for n in 0..count {
        let mu = random_class(&xy, rng, |_| true);
        let nu = random_class(&yz, rng, |_| true);
        let kappa = random_class(&zx, rng, |_| true);
        report.merge(verify_composition(&mu, &nu, "random")?);
        let left = compose_kernels(&compose_kernels(&mu, &nu)?, &kappa)?;
        let right = compose_kernels(&mu, &compose_kernels(&nu, &kappa)?)?;
        report.record_eq(|| format!("associativity case {n}"), &left, &right);
    }
    Ok(report)
}

/// `phi^e` preserves every column for `count` random (p,p) kernels on `X x Y`.
pub fn columns_sweep<R: Rng>(x: &SpaceRef, y: &SpaceRef, rng: &mut R, count: usize) -> Result<Report> {
    let xy = product(x, y);
    let mut report = Report::new("columns", &[x, y], format!("{count} random (p,p) kernels"));
    for _ in 0..count {
        let e = random_class(&xy, rng, |b| b.p == b.q);
        report.merge(verify_columns(&e, &e.render())?);
    }
    Ok(report)
}

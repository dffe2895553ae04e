//! Cohomological integral transforms `phi^mu(v) = pi_{Y,*}(pi_X^* v . mu)`,
//! kernel composition, adjoint kernels and the verification sweeps built on
//! them.

use rayon::prelude::*;
use serde::Serialize;

use crate::charclasses::{dualize, inv_sqrt_canonical, sqrt_canonical, tau};
use crate::coeffs::GaussRat;
use crate::cohomology::{check_same, diagonal_class, CohClass, Factor, Kernel, Space, SpaceRef};
use crate::error::{Error, Result};

fn factors_of(space: &SpaceRef) -> Result<(SpaceRef, SpaceRef)> {
    space
        .factors()
        .cloned()
        .ok_or_else(|| Error::NotAProduct(space.name().to_string()))
}

/// `phi^mu_{X->Y}(v) = pi_{Y,*}(pi_X^*(v) . mu)` for `mu` on `X x Y`.
pub fn apply_transform(mu: &Kernel, v: &CohClass) -> Result<CohClass> {
    let xy = mu.space();
    CohClass::pullback(xy, Factor::First, v)?.mul(mu)?.pushforward(Factor::Second)
}

/// A kernel on `X x Y` read as a transform `Y -> X`:
/// `v -> pi_{X,*}(pi_Y^*(v) . mu)`.
pub fn apply_transform_backward(mu: &Kernel, v: &CohClass) -> Result<CohClass> {
    let xy = mu.space();
    CohClass::pullback(xy, Factor::Second, v)?.mul(mu)?.pushforward(Factor::First)
}

/// `nu o mu = pi_{XZ,*}(pi_{XY}^* mu . pi_{YZ}^* nu)` on `X x Z`.
///
/// The triple product is built as `(X x Y) x Z`.
pub fn compose_kernels(mu: &Kernel, nu: &Kernel) -> Result<Kernel> {
    let (x, y) = factors_of(mu.space())?;
    let (y2, z) = factors_of(nu.space())?;
    check_same(&y, &y2)?;
    let xy = mu.space().clone();
    let xyz = Space::product(&xy, &z);
    let (ny, nz) = (y.len(), z.len());

    let lifted_mu = CohClass::pullback(&xyz, Factor::First, mu)?;
    // pi_{YZ}^*(y (x) z) = (1 (x) y) (x) z
    let lifted_nu = CohClass::from_sparse(
        &xyz,
        nu.terms()
            .map(|(k, c)| {
                let (b, c_idx) = (k / nz, k % nz);
                ((x.unit_index() * ny + b) * nz + c_idx, c.clone())
            })
            .collect(),
    );
    let product = lifted_mu.mul(&lifted_nu)?;

    let xz = Space::product(&x, &z);
    let mut terms = Vec::new();
    for (k, c) in product.terms() {
        let (ab, c_idx) = (k / nz, k % nz);
        let (a, b) = (ab / ny, ab % ny);
        if b != y.point_index() {
            continue;
        }
        // move the fiber class of Y past the Z-component
        let odd = y.element(b).is_odd() && z.element(c_idx).is_odd();
        terms.push((a * nz + c_idx, if odd { -c } else { c.clone() }));
    }
    Ok(CohClass::from_sparse(&xz, terms))
}

fn adjoint_twist(e: &Kernel, sign_dim: u32, numerator: Factor) -> Result<Kernel> {
    let xy = e.space().clone();
    let (x, y) = factors_of(&xy)?;
    let (num_space, den_space, den_factor) = match numerator {
        Factor::First => (&x, &y, Factor::Second),
        Factor::Second => (&y, &x, Factor::First),
    };
    let num = CohClass::pullback(&xy, numerator, &sqrt_canonical(num_space))?;
    let den = CohClass::pullback(&xy, den_factor, &inv_sqrt_canonical(den_space))?;
    let sign = GaussRat::from_int(if sign_dim % 2 == 0 { 1 } else { -1 });
    tau(e).scale(&sign).mul(&num)?.mul(&den)
}

/// Kernel of the left adjoint, `E* = E^vee (x) pi_Y^* omega_Y [dim Y]`, in
/// cohomology:
/// `e* = (-1)^{dim Y} tau(e) . pi_Y^* sqrt(ch omega_Y) / pi_X^* sqrt(ch omega_X)`.
/// The result lives on `X x Y` and is read as a transform `Y -> X`.
pub fn left_adjoint_kernel(e: &Kernel) -> Result<Kernel> {
    let (_, y) = factors_of(e.space())?;
    adjoint_twist(e, y.dim(), Factor::Second)
}

/// Kernel of the right adjoint, `E^vee (x) pi_X^* omega_X [dim X]`:
/// `(-1)^{dim X} tau(e) . pi_X^* sqrt(ch omega_X) / pi_Y^* sqrt(ch omega_Y)`,
/// read as a transform `Y -> X`.
pub fn right_adjoint_kernel(e: &Kernel) -> Result<Kernel> {
    let (x, _) = factors_of(e.space())?;
    adjoint_twist(e, x.dim(), Factor::First)
}

/// Which adjoint a sweep checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Outcome of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub space_names: Vec<String>,
    pub kernel_description: String,
    pub cases_total: usize,
    pub cases_failed: usize,
    pub first_failure: Option<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, spaces: &[&SpaceRef], kernel_description: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            space_names: spaces.iter().map(|s| s.name().to_string()).collect(),
            kernel_description: kernel_description.into(),
            cases_total: 0,
            cases_failed: 0,
            first_failure: None,
        }
    }

    /// Records one case; `failure` describes it when it did not hold.
    pub fn record(&mut self, failure: Option<String>) {
        self.cases_total += 1;
        if let Some(msg) = failure {
            self.cases_failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(msg);
            }
        }
    }

    pub fn record_eq<T: PartialEq + std::fmt::Display>(&mut self, case: impl FnOnce() -> String, left: &T, right: &T) {
        if left == right {
            self.record(None);
        } else {
            self.record(Some(format!("{}: {} != {}", case(), left, right)));
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.cases_total += other.cases_total;
        self.cases_failed += other.cases_failed;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn basis_classes(x: &SpaceRef) -> Vec<CohClass> {
    (0..x.len()).map(|i| CohClass::basis(x, i).expect("index in range")).collect()
}

/// Applies `f` to every basis vector of `x`, in parallel, keeping basis order.
fn map_basis<F>(x: &SpaceRef, f: F) -> Result<Vec<CohClass>>
where
    F: Fn(&CohClass) -> Result<CohClass> + Sync + Send,
{
    basis_classes(x).par_iter().map(f).collect()
}

/// Checks `<v, phi^e w>_Y = <phi^{e*} v, w>_X` (left) or
/// `<phi^e w, v>_Y = <w, phi^{e!} v>_X` (right) on all basis pairs.
pub fn verify_adjointness(e: &Kernel, description: &str, side: Side) -> Result<Report> {
    let (x, y) = factors_of(e.space())?;
    let adjoint = match side {
        Side::Left => left_adjoint_kernel(e)?,
        Side::Right => right_adjoint_kernel(e)?,
    };
    let forward = map_basis(&x, |w| apply_transform(e, w))?;
    let backward = map_basis(&y, |v| apply_transform_backward(&adjoint, v))?;
    let xs = basis_classes(&x);
    let ys = basis_classes(&y);

    let check = match side {
        Side::Left => "adjointness-left",
        Side::Right => "adjointness-right",
    };
    let mut report = Report::new(check, &[&x, &y], description);
    for (j, v) in ys.iter().enumerate() {
        for (i, w) in xs.iter().enumerate() {
            let (lhs, rhs) = match side {
                Side::Left => (
                    dualize(v).mul(&forward[i])?.integrate(),
                    dualize(&backward[j]).mul(w)?.integrate(),
                ),
                Side::Right => (
                    dualize(&forward[i]).mul(v)?.integrate(),
                    dualize(w).mul(&backward[j])?.integrate(),
                ),
            };
            report.record_eq(|| format!("v={}, w={}", y.element(j).name, x.element(i).name), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// Checks that `e` (on `X x Y`) and `e_inv` (on `Y x X`) are inverse kernels,
/// then `<phi^e v, phi^e w>_Y = <v, w>_X` on all basis pairs.
pub fn verify_isometry(e: &Kernel, e_inv: &Kernel, description: &str) -> Result<Report> {
    let (x, y) = factors_of(e.space())?;
    let (y2, x2) = factors_of(e_inv.space())?;
    check_same(&y, &y2)?;
    check_same(&x, &x2)?;
    if compose_kernels(e, e_inv)? != diagonal_class(&x)? {
        return Err(Error::NotAnEquivalence(format!("{description}: e_inv o e differs from [Delta_{}]", x.name())));
    }
    if compose_kernels(e_inv, e)? != diagonal_class(&y)? {
        return Err(Error::NotAnEquivalence(format!("{description}: e o e_inv differs from [Delta_{}]", y.name())));
    }
    let images = map_basis(&x, |v| apply_transform(e, v))?;
    let xs = basis_classes(&x);
    let mut report = Report::new("isometry", &[&x, &y], description);
    for (i, v) in xs.iter().enumerate() {
        let dv = dualize(v);
        let dphi = dualize(&images[i]);
        for (j, w) in xs.iter().enumerate() {
            let lhs = dphi.mul(&images[j])?.integrate();
            let rhs = dv.mul(w)?.integrate();
            report.record_eq(|| format!("v={}, w={}", x.element(i).name, x.element(j).name), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// Checks `phi^{nu o mu} = phi^nu o phi^mu` on every basis vector of `X`.
pub fn verify_composition(mu: &Kernel, nu: &Kernel, description: &str) -> Result<Report> {
    let (x, y) = factors_of(mu.space())?;
    let (_, z) = factors_of(nu.space())?;
    let composed = compose_kernels(mu, nu)?;
    let mut report = Report::new("composition", &[&x, &y, &z], description);
    for (i, v) in basis_classes(&x).iter().enumerate() {
        let lhs = apply_transform(&composed, v)?;
        let rhs = apply_transform(nu, &apply_transform(mu, v)?)?;
        report.record_eq(|| format!("v={}", x.element(i).name), &lhs, &rhs);
    }
    Ok(report)
}

/// `phi^{v(E2) o v(E1)} = phi^{v(E2)} o phi^{v(E1)}` for K-theory kernels.
pub fn functoriality_check(e1: &crate::charclasses::KExpr, e2: &crate::charclasses::KExpr) -> Result<Report> {
    let mu = crate::charclasses::mukai_vector(e1)?;
    let nu = crate::charclasses::mukai_vector(e2)?;
    let mut report = verify_composition(&mu, &nu, &format!("v({e2}) o v({e1})"))?;
    report.check = "functoriality".into();
    Ok(report)
}

/// Checks that `phi^e` maps each column `H Omega_i(X)` into `H Omega_i(Y)`.
pub fn verify_columns(e: &Kernel, description: &str) -> Result<Report> {
    let (x, y) = factors_of(e.space())?;
    let mut report = Report::new("columns", &[&x, &y], description);
    for (i, v) in basis_classes(&x).iter().enumerate() {
        let el = x.element(i);
        let column = i64::from(el.q) - i64::from(el.p);
        let image = apply_transform(e, v)?;
        let projected = crate::pairing::column_projection(&image, column);
        report.record_eq(|| format!("v={} (column {column})", el.name), &image, &projected);
    }
    Ok(report)
}

/// Checks `phi^{[Delta]} = id` on the basis of `x`.
pub fn verify_identity(x: &SpaceRef) -> Result<Report> {
    let delta = diagonal_class(x)?;
    let mut report = Report::new("identity", &[x], "[Delta]");
    for (i, v) in basis_classes(x).iter().enumerate() {
        report.record_eq(|| format!("v={}", x.element(i).name), &apply_transform(&delta, v)?, v);
    }
    Ok(report)
}

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::space::{normalize, Factor, SpaceRef, Sparse};
use crate::coeffs::GaussRat;
use crate::error::{Error, Result};

/// An element of `H^*(X, Q(i))`, stored sparsely over the basis of its space.
#[derive(Clone, Debug)]
pub struct CohClass {
    space: SpaceRef,
    coeffs: BTreeMap<usize, GaussRat>,
}

/// A class on a product space, used as the kernel of an integral transform.
pub type Kernel = CohClass;

pub(crate) fn check_same(a: &SpaceRef, b: &SpaceRef) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch { expected: a.name().to_string(), found: b.name().to_string() })
    }
}

impl CohClass {
    pub fn new(space: &SpaceRef, terms: impl IntoIterator<Item = (usize, GaussRat)>) -> Result<Self> {
        let mut coeffs: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (k, c) in terms {
            if k >= space.len() {
                return Err(Error::BasisIndex { space: space.name().to_string(), index: k });
            }
            *coeffs.entry(k).or_default() += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(CohClass { space: space.clone(), coeffs })
    }

    /// Internal constructor for terms already known to be in range.
    pub(crate) fn from_sparse(space: &SpaceRef, terms: Sparse) -> Self {
        CohClass { space: space.clone(), coeffs: normalize(terms).into_iter().collect() }
    }

    pub fn zero(space: &SpaceRef) -> Self {
        CohClass { space: space.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(space: &SpaceRef) -> Self {
        Self::scalar(space, GaussRat::one())
    }

    pub fn scalar(space: &SpaceRef, c: GaussRat) -> Self {
        Self::from_sparse(space, vec![(space.unit_index(), c)])
    }

    pub fn basis(space: &SpaceRef, idx: usize) -> Result<Self> {
        Self::new(space, [(idx, GaussRat::one())])
    }

    /// The point class, normalized so that it integrates to 1.
    pub fn point(space: &SpaceRef) -> Self {
        Self::from_sparse(space, vec![(space.point_index(), GaussRat::one())])
    }

    /// Total Chern class `c(T_X)`.
    pub fn tangent_chern(space: &SpaceRef) -> Self {
        Self::from_sparse(space, space.tangent_chern_terms().clone())
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn coeff(&self, idx: usize) -> GaussRat {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &GaussRat)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_sparse(&self) -> Sparse {
        self.coeffs.iter().map(|(k, c)| (*k, c.clone())).collect()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(self.space.unit_index())
    }

    pub fn add(&self, rhs: &CohClass) -> Result<CohClass> {
        check_same(&self.space, &rhs.space)?;
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            *coeffs.entry(*k).or_default() += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(CohClass { space: self.space.clone(), coeffs })
    }

    pub fn sub(&self, rhs: &CohClass) -> Result<CohClass> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> CohClass {
        self.map(|_, c| -c)
    }

    pub fn scale(&self, s: &GaussRat) -> CohClass {
        self.map(|_, c| s * c)
    }

    pub fn mul(&self, rhs: &CohClass) -> Result<CohClass> {
        check_same(&self.space, &rhs.space)?;
        let terms = self.space.mult_sparse(&self.to_sparse(), &rhs.to_sparse());
        Ok(CohClass { space: self.space.clone(), coeffs: terms.into_iter().collect() })
    }

    /// Square-and-multiply power.
    pub fn pow(&self, exp: u32) -> CohClass {
        let mut acc = CohClass::one(&self.space);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same space");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same space");
            }
        }
        acc
    }

    /// Rescales each basis coefficient by `f(basis index, coefficient)`.
    pub fn map(&self, mut f: impl FnMut(usize, &GaussRat) -> GaussRat) -> CohClass {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, c)| (*k, f(*k, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        CohClass { space: self.space.clone(), coeffs }
    }

    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> CohClass {
        let coeffs = self.coeffs.iter().filter(|(k, _)| keep(**k)).map(|(k, c)| (*k, c.clone())).collect();
        CohClass { space: self.space.clone(), coeffs }
    }

    /// Component of total degree `k`.
    pub fn degree_part(&self, k: u32) -> CohClass {
        let space = self.space.clone();
        self.filter(|i| space.element(i).degree() == k)
    }

    /// `int_X` of the class: the coefficient of the point class.
    pub fn integrate(&self) -> GaussRat {
        self.coeff(self.space.point_index())
    }

    /// True when every component lies in some `H^{p,p}`.
    pub fn is_algebraic(&self) -> bool {
        self.coeffs.keys().all(|&k| {
            let e = self.space.element(k);
            e.p == e.q
        })
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|&k| !self.space.element(k).is_odd())
    }

    /// `pi_f^*(a)` from a factor of the product `space`.
    pub fn pullback(space: &SpaceRef, factor: Factor, a: &CohClass) -> Result<CohClass> {
        let (x, y) = space.factors().ok_or_else(|| Error::NotAProduct(space.name().to_string()))?;
        let terms = match factor {
            Factor::First => {
                check_same(x, &a.space)?;
                a.terms().map(|(k, c)| (k * y.len() + y.unit_index(), c.clone())).collect()
            }
            Factor::Second => {
                check_same(y, &a.space)?;
                a.terms().map(|(k, c)| (x.unit_index() * y.len() + k, c.clone())).collect()
            }
        };
        Ok(CohClass::from_sparse(space, terms))
    }

    /// `pi_{f,*}`: integrates out the other factor of a product space.
    ///
    /// `a (x) b` maps to `(int b) a` on the first factor and to
    /// `(-1)^{|a||b|} (int a) b` on the second, the sign being the cost of
    /// moving the fiber class past `b`. Fibers have even real dimension, so
    /// the sign is always `+1` on nonzero terms.
    pub fn pushforward(&self, factor: Factor) -> Result<CohClass> {
        let (x, y) = self.space.factors().ok_or_else(|| Error::NotAProduct(self.space.name().to_string()))?;
        let ny = y.len();
        let mut terms = Sparse::new();
        for (k, c) in self.terms() {
            let (a, b) = (k / ny, k % ny);
            match factor {
                Factor::First if b == y.point_index() => terms.push((a, c.clone())),
                Factor::Second if a == x.point_index() => {
                    let sign = x.element(a).is_odd() && y.element(b).is_odd();
                    terms.push((b, if sign { -c } else { c.clone() }));
                }
                _ => {}
            }
        }
        let target = match factor {
            Factor::First => x,
            Factor::Second => y,
        };
        Ok(CohClass::from_sparse(target, terms))
    }

    /// Textual form that parses back to the same class.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let term = render_term(&basis_expr(&self.space, *k), c);
            if i == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

/// Expression for a basis vector: its name, or `p1(..)*p2(..)` on products.
pub fn basis_expr(space: &SpaceRef, idx: usize) -> String {
    if idx == space.unit_index() {
        return "1".to_string();
    }
    match space.factors() {
        None => space.element(idx).name.clone(),
        Some((x, y)) => {
            let (a, b) = (idx / y.len(), idx % y.len());
            let mut parts = Vec::new();
            if a != x.unit_index() {
                parts.push(format!("p1({})", basis_expr(x, a)));
            }
            if b != y.unit_index() {
                parts.push(format!("p2({})", basis_expr(y, b)));
            }
            parts.join("*")
        }
    }
}

fn render_term(basis: &str, c: &GaussRat) -> String {
    let coeff = c.to_string();
    let mixed = !c.re().is_zero() && !c.im().is_zero();
    if basis == "1" {
        return if mixed { format!("({coeff})") } else { coeff };
    }
    if c.is_one() {
        basis.to_string()
    } else if (-c).is_one() {
        format!("-{basis}")
    } else if mixed {
        format!("({coeff})*{basis}")
    } else {
        format!("{coeff}*{basis}")
    }
}


impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.coeffs == other.coeffs
    }
}

impl Eq for CohClass {}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

use std::fmt;

use crate::cohomology::{check_same, CohClass, SpaceRef};
use crate::error::{Error, Result};

/// A formal K-theory expression whose Chern character is evaluated
/// homomorphically.
#[derive(Clone, Debug, PartialEq)]
pub enum KExpr {
    /// `O_X`.
    Structure(SpaceRef),
    /// The line bundle with the given first Chern class.
    LineBundle(CohClass),
    /// `T_X`.
    Tangent(SpaceRef),
    Dual(Box<KExpr>),
    Tensor(Box<KExpr>, Box<KExpr>),
    Sum(Box<KExpr>, Box<KExpr>),
    /// `e[n]`.
    Shift(Box<KExpr>, i64),
    /// `pi_1^* e1 (x) pi_2^* e2` on the product `space`.
    ExternalTensor { space: SpaceRef, left: Box<KExpr>, right: Box<KExpr> },
}

impl KExpr {
    pub fn structure(space: &SpaceRef) -> Self {
        KExpr::Structure(space.clone())
    }

    pub fn tangent(space: &SpaceRef) -> Self {
        KExpr::Tangent(space.clone())
    }

    /// Line bundle with `c_1 = c1`; every component must have bidegree (1,1).
    pub fn line_bundle(c1: CohClass) -> Result<Self> {
        let space = c1.space().clone();
        if c1.terms().any(|(k, _)| {
            let e = space.element(k);
            e.p != 1 || e.q != 1
        }) {
            return Err(Error::Bidegree(c1.render()));
        }
        Ok(KExpr::LineBundle(c1))
    }

    pub fn dual(e: KExpr) -> Self {
        KExpr::Dual(Box::new(e))
    }

    pub fn shift(e: KExpr, n: i64) -> Self {
        KExpr::Shift(Box::new(e), n)
    }

    pub fn tensor(a: KExpr, b: KExpr) -> Result<Self> {
        check_same(&a.space(), &b.space())?;
        Ok(KExpr::Tensor(Box::new(a), Box::new(b)))
    }

    pub fn sum(a: KExpr, b: KExpr) -> Result<Self> {
        check_same(&a.space(), &b.space())?;
        Ok(KExpr::Sum(Box::new(a), Box::new(b)))
    }

    /// `box(left, right)` on `product`, whose factors must be the operands' spaces.
    pub fn external(product: &SpaceRef, left: KExpr, right: KExpr) -> Result<Self> {
        let (x, y) = product.factors().ok_or_else(|| Error::NotAProduct(product.name().to_string()))?;
        check_same(x, &left.space())?;
        check_same(y, &right.space())?;
        Ok(KExpr::ExternalTensor { space: product.clone(), left: Box::new(left), right: Box::new(right) })
    }

    /// The ambient space.
    pub fn space(&self) -> SpaceRef {
        match self {
            KExpr::Structure(s) | KExpr::Tangent(s) => s.clone(),
            KExpr::LineBundle(c) => c.space().clone(),
            KExpr::Dual(e) | KExpr::Shift(e, _) => e.space(),
            KExpr::Tensor(a, _) | KExpr::Sum(a, _) => a.space(),
            KExpr::ExternalTensor { space, .. } => space.clone(),
        }
    }

    /// True if the expression contains a shift.
    pub fn has_shift(&self) -> bool {
        match self {
            KExpr::Structure(_) | KExpr::Tangent(_) | KExpr::LineBundle(_) => false,
            KExpr::Shift(..) => true,
            KExpr::Dual(e) => e.has_shift(),
            KExpr::Tensor(a, b) | KExpr::Sum(a, b) => a.has_shift() || b.has_shift(),
            KExpr::ExternalTensor { left, right, .. } => left.has_shift() || right.has_shift(),
        }
    }
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KExpr::Structure(_) => write!(f, "O"),
            KExpr::LineBundle(c) if c.is_zero() => write!(f, "O"),
            KExpr::LineBundle(c) => write!(f, "O({})", c.render()),
            KExpr::Tangent(_) => write!(f, "T"),
            KExpr::Dual(e) => write!(f, "dual({e})"),
            KExpr::Tensor(a, b) => write!(f, "({a} * {b})"),
            KExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            KExpr::Shift(e, n) => write!(f, "{e}[{n}]"),
            KExpr::ExternalTensor { left, right, .. } => write!(f, "box({left}, {right})"),
        }
    }
}

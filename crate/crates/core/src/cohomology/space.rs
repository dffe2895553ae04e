use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffs::{GaussRat, Matrix};
use crate::error::{Error, Result};

/// Shared handle to an immutable [`Space`].
pub type SpaceRef = Arc<Space>;

/// Sparse linear combination of basis indices.
pub type Sparse = Vec<(usize, GaussRat)>;

/// A basis vector of `H^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub p: u32,
    pub q: u32,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, p: u32, q: u32) -> Self {
        BasisElement { name: name.into(), p, q }
    }

    /// Total degree `p + q`.
    pub fn degree(&self) -> u32 {
        self.p + self.q
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }
}

/// Which factor of a product space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    First,
    Second,
}

#[derive(Debug)]
enum Mult {
    /// Dense table of structure constants, `table[i][j] = e_i . e_j`.
    Table(Vec<Vec<Sparse>>),
    /// Kunneth product of the two recorded factors.
    Product,
}

/// Finite model of the cohomology ring `H^*(X, Q(i))` of a smooth projective
/// variety: a bigraded basis, structure constants, integration against the
/// point class and the total Chern class of the tangent bundle.
pub struct Space {
    name: String,
    dim: u32,
    basis: Vec<BasisElement>,
    mult: Mult,
    unit: usize,
    point: usize,
    tangent_chern: Sparse,
    factors: Option<(SpaceRef, SpaceRef)>,
}

fn koszul(a: &BasisElement, b: &BasisElement) -> bool {
    a.is_odd() && b.is_odd()
}

impl Space {
    /// Builds a space from explicit structure constants and checks every ring
    /// axiom. Products involving the unit may be omitted from `products`.
    pub fn from_table(
        name: impl Into<String>,
        dim: u32,
        basis: Vec<BasisElement>,
        products: impl IntoIterator<Item = ((usize, usize), Sparse)>,
        point: usize,
        tangent_chern: Sparse,
    ) -> Result<SpaceRef> {
        let name = name.into();
        let n = basis.len();
        let invalid = |msg: String| Error::InvalidSpace(format!("{name}: {msg}"));

        let units: Vec<usize> = (0..n).filter(|&i| basis[i].p == 0 && basis[i].q == 0).collect();
        let [unit] = units[..] else {
            return Err(invalid(format!("expected one (0,0) basis element, found {}", units.len())));
        };
        if point >= n || basis[point].p != dim || basis[point].q != dim {
            return Err(invalid(format!("point index {point} is not of bidegree ({dim},{dim})")));
        }
        if let Some(e) = basis.iter().find(|e| e.degree() > 2 * dim) {
            return Err(invalid(format!("basis element `{}` exceeds degree {}", e.name, 2 * dim)));
        }
        if basis.iter().filter(|e| e.p == dim && e.q == dim).count() != 1 {
            return Err(invalid("expected exactly one point class".into()));
        }

        let mut table = vec![vec![Sparse::new(); n]; n];
        for i in 0..n {
            table[unit][i] = vec![(i, GaussRat::one())];
            table[i][unit] = vec![(i, GaussRat::one())];
        }
        for ((i, j), value) in products {
            if i >= n || j >= n || value.iter().any(|(k, _)| *k >= n) {
                return Err(invalid(format!("product ({i},{j}) refers to a missing basis index")));
            }
            let value = normalize(value);
            if (i == unit || j == unit) && value != table[i][j] {
                return Err(invalid(format!("product ({i},{j}) contradicts the unit")));
            }
            table[i][j] = value;
        }

        let space = Space {
            name,
            dim,
            basis,
            mult: Mult::Table(table),
            unit,
            point,
            tangent_chern: normalize(tangent_chern),
            factors: None,
        };
        space.validate()?;
        Ok(Arc::new(space))
    }

    /// The Kunneth product `X x Y` with basis `a (x) b` indexed `a * |Y| + b`.
    pub fn product(x: &SpaceRef, y: &SpaceRef) -> SpaceRef {
        let ny = y.len();
        let mut basis = Vec::with_capacity(x.len() * ny);
        for a in &x.basis {
            for b in &y.basis {
                basis.push(BasisElement::new(format!("{}⊗{}", a.name, b.name), a.p + b.p, a.q + b.q));
            }
        }
        let mut chern = Sparse::new();
        for (a, ca) in &x.tangent_chern {
            for (b, cb) in &y.tangent_chern {
                chern.push((a * ny + b, ca * cb));
            }
        }
        chern.sort_by_key(|(k, _)| *k);
        Arc::new(Space {
            name: format!("{} x {}", x.name, y.name),
            dim: x.dim + y.dim,
            basis,
            mult: Mult::Product,
            unit: x.unit * ny + y.unit,
            point: x.point * ny + y.point,
            tangent_chern: chern,
            factors: Some((x.clone(), y.clone())),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Complex dimension.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, idx: usize) -> &BasisElement {
        &self.basis[idx]
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn point_index(&self) -> usize {
        self.point
    }

    pub fn tangent_chern_terms(&self) -> &Sparse {
        &self.tangent_chern
    }

    pub fn factors(&self) -> Option<&(SpaceRef, SpaceRef)> {
        self.factors.as_ref()
    }

    pub fn is_product(&self) -> bool {
        self.factors.is_some()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|e| e.name == name)
    }

    /// Splits a product index into its factor indices.
    pub fn split_index(&self, idx: usize) -> Option<(usize, usize)> {
        let (_, y) = self.factors.as_ref()?;
        Some((idx / y.len(), idx % y.len()))
    }

    pub fn join_index(&self, a: usize, b: usize) -> Option<usize> {
        let (_, y) = self.factors.as_ref()?;
        Some(a * y.len() + b)
    }

    /// Structural identity. Products built twice from the same factors agree.
    pub fn same_as(&self, other: &Space) -> bool {
        std::ptr::eq(self, other)
            || (self.name == other.name && self.dim == other.dim && self.basis == other.basis)
    }

    pub fn has_odd_cohomology(&self) -> bool {
        self.basis.iter().any(BasisElement::is_odd)
    }

    /// `e_i . e_j` in the basis.
    pub fn mult_basis(&self, i: usize, j: usize) -> Sparse {
        match &self.mult {
            Mult::Table(t) => t[i][j].clone(),
            Mult::Product => {
                let (x, y) = self.factors.as_ref().expect("product space records its factors");
                let ny = y.len();
                let (a, b) = (i / ny, i % ny);
                let (a2, b2) = (j / ny, j % ny);
                let left = x.mult_basis(a, a2);
                if left.is_empty() {
                    return Sparse::new();
                }
                let right = y.mult_basis(b, b2);
                let negate = koszul(&y.basis[b], &x.basis[a2]);
                let mut out = Sparse::with_capacity(left.len() * right.len());
                for (k, c) in &left {
                    for (l, d) in &right {
                        let v = c * d;
                        out.push((k * ny + l, if negate { -v } else { v }));
                    }
                }
                out
            }
        }
    }

    /// The intersection matrix `P_ij = int e_i . e_j`.
    pub fn pairing_matrix(&self) -> Matrix {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.mult_basis(i, j)
                            .into_iter()
                            .find(|(k, _)| *k == self.point)
                            .map_or_else(GaussRat::zero, |(_, c)| c)
                    })
                    .collect()
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Error::InvalidSpace(format!("{}: {msg}", self.name));
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (&self.basis[i], &self.basis[j]);
                let prod = self.mult_basis(i, j);
                for (k, _) in &prod {
                    let ek = &self.basis[*k];
                    if ek.p != ei.p + ej.p || ek.q != ei.q + ej.q {
                        return Err(invalid(format!(
                            "{} . {} has a term `{}` of the wrong bidegree",
                            ei.name, ej.name, ek.name
                        )));
                    }
                }
                let swapped = self.mult_basis(j, i);
                let expected: Sparse = if koszul(ei, ej) {
                    swapped.into_iter().map(|(k, c)| (k, -c)).collect()
                } else {
                    swapped
                };
                if prod != expected {
                    return Err(invalid(format!("{} and {} violate graded commutativity", ei.name, ej.name)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mult_basis(i, j);
                for k in 0..n {
                    let left = self.mult_sparse(&ij, &[(k, GaussRat::one())]);
                    let jk = self.mult_basis(j, k);
                    let right = self.mult_sparse(&[(i, GaussRat::one())], &jk);
                    if left != right {
                        return Err(invalid(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i].name, self.basis[j].name, self.basis[k].name
                        )));
                    }
                }
            }
        }
        crate::coeffs::invert(&self.pairing_matrix())
            .map_err(|e| invalid(format!("intersection pairing is degenerate ({e})")))?;

        let c0 = self.tangent_chern.iter().find(|(k, _)| *k == self.unit);
        if !c0.is_some_and(|(_, c)| c.is_one()) {
            return Err(invalid("tangent Chern class must have constant term 1".into()));
        }
        if let Some((k, _)) = self.tangent_chern.iter().find(|(k, _)| self.basis[*k].p != self.basis[*k].q) {
            return Err(invalid(format!("tangent Chern class has a component `{}` off the diagonal", self.basis[*k].name)));
        }
        Ok(())
    }

    pub(crate) fn mult_sparse(&self, a: &[(usize, GaussRat)], b: &[(usize, GaussRat)]) -> Sparse {
        let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (i, c) in a {
            for (j, d) in b {
                let cd = c * d;
                for (k, e) in self.mult_basis(*i, *j) {
                    *acc.entry(k).or_default() += &(&cd * &e);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Sorts, merges duplicate indices and drops zeros.
pub(crate) fn normalize(terms: Sparse) -> Sparse {
    let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
    for (k, c) in terms {
        *acc.entry(k).or_default() += &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({})", self.name)
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

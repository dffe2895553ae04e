//! Model spaces: projective spaces, a K3 surface and complex tori.

use super::space::{BasisElement, Space, SpaceRef, Sparse};
use crate::coeffs::GaussRat;

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

/// The one-point space; `P^0` and the zero-dimensional torus both build it.
pub fn point() -> SpaceRef {
    Space::from_table("pt", 0, vec![BasisElement::new("1", 0, 0)], [], 0, vec![(0, GaussRat::one())])
        .expect("point space is well formed")
}

/// `P^n` with basis `1, H, H^2, ..., H^n` and `c(T) = (1 + H)^{n+1}`.
pub fn projective_space(n: u32) -> SpaceRef {
    if n == 0 {
        return point();
    }
    let basis = (0..=n)
        .map(|k| {
            let name = match k {
                0 => "1".to_string(),
                1 => "H".to_string(),
                _ => format!("H^{k}"),
            };
            BasisElement::new(name, k, k)
        })
        .collect();
    let n_us = n as usize;
    let mut products = Vec::new();
    for a in 1..=n_us {
        for b in 1..=n_us {
            let value: Sparse = if a + b <= n_us { vec![(a + b, GaussRat::one())] } else { vec![] };
            products.push(((a, b), value));
        }
    }
    let chern = (0..=n_us).map(|k| (k, GaussRat::from_int(binomial(u64::from(n) + 1, k as u64)))).collect();
    Space::from_table(format!("P{n}"), n, basis, products, n_us, chern).expect("projective space is well formed")
}

/// Edges of the E8 Dynkin diagram (Bourbaki labelling, zero-based).
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// A K3 surface.
///
/// `H^2` carries the even unimodular lattice `U^3 + E8(-1)^2`. The first
/// hyperbolic plane is spanned by `sigma` of bidegree (2,0) and `sigmabar`
/// of bidegree (0,2) with `sigma^2 = 0` and `sigma.sigmabar = pt`. The other
/// 20 classes have bidegree (1,1): `u2, v2, u3, v3` span `U^2` and
/// `e1..e8`, `f1..f8` the two `E8(-1)` blocks. `c(T) = 1 + 24 pt`.
pub fn k3() -> SpaceRef {
    let mut basis = vec![BasisElement::new("1", 0, 0), BasisElement::new("sigma", 2, 0)];
    for name in ["u2", "v2", "u3", "v3"] {
        basis.push(BasisElement::new(name, 1, 1));
    }
    for prefix in ["e", "f"] {
        for k in 1..=8 {
            basis.push(BasisElement::new(format!("{prefix}{k}"), 1, 1));
        }
    }
    basis.push(BasisElement::new("sigmabar", 0, 2));
    basis.push(BasisElement::new("pt", 2, 2));
    let (sigma, sigmabar, pt) = (1, 22, 23);

    // Gram matrix on H^2 in basis indices 1..=22
    let mut gram: Vec<(usize, usize, i64)> = vec![(sigma, sigmabar, 1), (2, 3, 1), (4, 5, 1)];
    for block in [6, 14] {
        for k in 0..8 {
            gram.push((block + k, block + k, -2));
        }
        for (a, b) in E8_EDGES {
            gram.push((block + a, block + b, 1));
        }
    }
    let mut products = Vec::new();
    for (a, b, v) in gram {
        products.push(((a, b), vec![(pt, GaussRat::from_int(v))]));
        if a != b {
            products.push(((b, a), vec![(pt, GaussRat::from_int(v))]));
        }
    }
    Space::from_table("K3", 2, basis, products, pt, vec![(0, GaussRat::one()), (pt, GaussRat::from_int(24))])
        .expect("K3 model is well formed")
}

/// Complex torus of dimension `g`: the exterior algebra on `a1..ag` of
/// bidegree (1,0) and `b1..bg` of bidegree (0,1), with
/// `int a1 b1 a2 b2 ... ag bg = 1` and trivial tangent bundle.
///
/// Generators are ordered `a1, b1, a2, b2, ...`; a basis monomial is the
/// ordered product of its generators and is named accordingly.
pub fn torus(g: u32) -> SpaceRef {
    if g == 0 {
        return point();
    }
    let gens = 2 * g as usize;
    let gen_name = |k: usize| format!("{}{}", if k % 2 == 0 { "a" } else { "b" }, k / 2 + 1);
    let mut masks: Vec<u32> = (0..1u32 << gens).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let index_of = |mask: u32| masks.iter().position(|&m| m == mask).expect("mask present");

    let basis: Vec<BasisElement> = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                return BasisElement::new("1", 0, 0);
            }
            let members: Vec<usize> = (0..gens).filter(|k| m >> k & 1 == 1).collect();
            let p = members.iter().filter(|k| *k % 2 == 0).count() as u32;
            let q = members.len() as u32 - p;
            let name = members.iter().map(|&k| gen_name(k)).collect::<Vec<_>>().join("*");
            BasisElement::new(name, p, q)
        })
        .collect();

    let mut products = Vec::new();
    for &s in &masks {
        for &t in &masks {
            if s == 0 || t == 0 {
                continue;
            }
            let value: Sparse = if s & t != 0 {
                vec![]
            } else {
                // sign of sorting the concatenated generator lists
                let inversions: u32 = (0..gens)
                    .filter(|k| s >> k & 1 == 1)
                    .map(|k| (t & ((1u32 << k) - 1)).count_ones())
                    .sum();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                vec![(index_of(s | t), GaussRat::from_int(sign))]
            };
            products.push(((index_of(s), index_of(t)), value));
        }
    }
    let top = index_of((1u32 << gens) - 1);
    Space::from_table(format!("T{g}"), g, basis, products, top, vec![(0, GaussRat::one())])
        .expect("torus is well formed")
}

use super::class::{CohClass, Kernel};
use super::space::{Factor, Space, SpaceRef};
use crate::coeffs::{invert, Matrix};
use crate::error::Result;

fn inverse_pairing(x: &SpaceRef) -> Result<Matrix> {
    invert(&x.pairing_matrix())
}

/// Pairs `(i, e^i)` with `int e_i . e^j = delta_ij`.
pub fn poincare_dual_basis(x: &SpaceRef) -> Result<Vec<(usize, CohClass)>> {
    let inv = inverse_pairing(x)?;
    let n = x.len();
    Ok((0..n)
        .map(|j| {
            let dual = CohClass::from_sparse(x, (0..n).map(|k| (k, inv[k][j].clone())).collect());
            (j, dual)
        })
        .collect())
}

/// The class of the diagonal in `X x X`.
///
/// With `P` the intersection matrix, `[Delta] = sum_{i,k} (P^{-1})_{ik} e_i (x) e_k`,
/// which is the unique class with `pi_{2,*}(pi_1^* a . [Delta]) = a` for all `a`.
/// Written against the dual basis this is `sum_i eps_i e_i (x) e^i` with
/// `eps_i = (-1)^{|e_i|}`, since `P^{-1}` is graded symmetric.
pub fn diagonal_class(x: &SpaceRef) -> Result<Kernel> {
    let inv = inverse_pairing(x)?;
    let xx = Space::product(x, x);
    let n = x.len();
    let mut terms = Vec::new();
    for (i, row) in inv.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.push((i * n + k, c.clone()));
            }
        }
    }
    Ok(CohClass::from_sparse(&xx, terms))
}

/// `Delta_*(a) = pi_1^*(a) . [Delta]`.
pub fn diagonal_pushforward(a: &CohClass) -> Result<Kernel> {
    let delta = diagonal_class(a.space())?;
    CohClass::pullback(delta.space(), Factor::First, a)?.mul(&delta)
}

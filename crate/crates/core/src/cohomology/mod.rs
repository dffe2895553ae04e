//! Bigraded cohomology ring models with Koszul signs, integration, Kunneth
//! products and Poincare duality.

mod builders;
mod class;
mod duality;
pub mod format;
mod space;

pub use builders::{k3, point, projective_space, torus};
pub use class::{basis_expr, CohClass, Kernel};
pub use duality::{diagonal_class, diagonal_pushforward, poincare_dual_basis};
pub use space::{BasisElement, Factor, Space, SpaceRef, Sparse};

pub(crate) use class::check_same;

/// `X x Y`.
pub fn product(x: &SpaceRef, y: &SpaceRef) -> SpaceRef {
    Space::product(x, y)
}

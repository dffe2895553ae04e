//! Exact cohomological integral transforms and the generalized Mukai pairing
//! on model spaces.

pub mod charclasses;
pub mod cli;
pub mod coeffs;
pub mod cohomology;
pub mod error;
pub mod pairing;
pub mod parse;
pub mod suites;
pub mod transforms;

pub use coeffs::GaussRat;
pub use cohomology::{CohClass, Kernel, Space, SpaceRef};
pub use error::{Error, Result};

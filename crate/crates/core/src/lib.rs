//! Exact computations with Demazure roots, locally nilpotent derivations on
//! semigroup algebras, and B-root subgroups of affine spherical varieties
//! described by their combinatorial data.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cli;
pub mod cone;
pub mod datum;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod roots;
pub mod search;
pub mod spherical;
pub mod toric;

pub use cone::{Cone, WeightMonoid};
pub use error::{Error, Result};
pub use lattice::{pairing, primitive, DualVector, LatticeTag, LatticeVector, Sublattice};
pub use spherical::SphericalDatum;
pub use toric::{AlgebraElement, DemazureRoot, PolynomialInT, ToricLnd};

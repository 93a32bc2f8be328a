//! Exact combinatorics of extended affine Weyl groups, alcoves and
//! Kazhdan–Lusztig type polynomials (ordinary, spherical and periodic), with
//! the representation-theoretic tables they compute.

pub mod alcove;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod periodic;
pub mod repcalc;
pub mod rootsys;
pub mod weylext;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use rootsys::{CartanType, Coweight, ModularContext, RootSystem, Weight, WeylElt};
pub use weylext::{AffSimple, AffineReflection, EltRepr, ExtWeylElt, OmegaElt, ThetaPair};

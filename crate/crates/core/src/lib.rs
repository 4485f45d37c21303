//! Exact weight-complex calculus.
//!
//! * [`zmod`]: finitely generated abelian groups, Smith normal form, homology.
//! * [`komplex`]: bounded complexes over matrix categories with the stupid
//!   weight structure, homotopy solvers, cones and contractible splittings.
//! * [`k0`]: Grothendieck-group classes and Euler-characteristic maps.
//! * [`motif`]: cohomology tables standing in for effective Chow motives,
//!   variety expressions, weight spectral sequences and the l-adic identities.

pub mod error;
pub mod k0;
pub mod komplex;
pub mod motif;
pub mod zmod;

pub use error::{Error, Result};
pub use zmod::{FgModule, IntMatrix, ModuleMap, Ring};

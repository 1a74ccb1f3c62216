//! Levelset persistence of a piecewise-linear function on a finite
//! simplicial complex.
//!
//! Three independent routes compute the same invariants:
//!
//! * [`invariants`]: images and kernels of level-set homology inside `H_r(X)`,
//!   their box measures, and the point-mass maps `δ_r`, `γ_r`;
//! * [`barcodes`]: extended persistence by GF(2) matrix reduction, decoded into
//!   closed, open, closed-open and open-closed bars;
//! * [`zigzag`]: an explicit levelset zigzag module for graphs, decomposed via
//!   generalized ranks.
//!
//! [`measures`] evaluates rectangle measures and diagrams directly on barcodes,
//! and [`equivalence`] checks that the routes agree.

pub mod barcodes;
pub mod complex;
pub mod equivalence;
pub mod error;
pub mod gf2;
pub mod invariants;
pub mod measures;
pub mod value;
pub mod zigzag;

pub use error::{Error, Result};

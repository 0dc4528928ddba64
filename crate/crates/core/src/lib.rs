//! Finite combinatorial models of the ordered configuration spaces
//! `F_k(A x R)` and of the suspension `Sigma F_3(A)_+`, built from a finite
//! simplicial model of `A` by iterated zigzag homotopy colimits.
//!
//! The crate is organised bottom-up:
//!
//! * [`complex`]: ordered simplicial complexes, staircase products,
//!   constrained (deleted) subcomplexes, subdivisions and product cells.
//! * [`chain`]: integer chain complexes, chain maps, cones, tensor products,
//!   homotopy colimits and exact homology.
//! * [`combinatorics`]: index tuples, height vectors and rank sequences of
//!   points on the line.
//! * [`config`]: deleted-product models of `F_k(A)` and the discretized
//!   graph certification.
//! * [`tower`]: the tower `E^k(A)` of homotopy colimits.
//! * [`suspension`]: the `k = 3` suspension tower and invariance checks.
//! * [`report`]: deterministic TSV and text renderings used by the CLI.

pub mod chain;
pub mod combinatorics;
pub mod complex;
pub mod config;
mod error;
pub mod report;
pub mod suspension;
pub mod tower;

pub use error::{Error, Result};

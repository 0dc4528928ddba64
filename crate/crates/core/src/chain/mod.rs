//! Integer chain complexes, chain maps, homotopy colimits and homology.

mod complex;
mod hocolim;
mod homology;
mod matrix;

pub use complex::{ChainComplex, ChainMap};
pub use hocolim::{hocolim_zigzag, PosetDiagram, PosetHocolim, ZigzagDiagram, ZigzagHocolim};
pub use homology::{homology, invariant_factors, rank, Coefficients, HomologySummary};
pub use matrix::SparseMatrix;

//! Exact evaluation of SL(2,Z) embeddings into the plane Cremona group.
//!
//! Words in the generators `R`, `S` are mapped to birational self-maps of P²
//! or P¹×P¹ with Gaussian-rational coefficients; degree sequences, dynamical
//! degrees and base-points are computed exactly. The `picard` module checks
//! integer isometry data on Picard lattices.

pub mod algebra;
pub mod error;
pub mod birmap;
pub mod sl2z;
pub mod embeddings;
pub mod picard;
pub mod cli;

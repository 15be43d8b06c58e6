//! Verification library for a two-dimensional exciton-in-a-quantum-dot
//! model: dimensional reduction to a single-coupling radial problem, exact
//! power-series analysis of the claimed closed-form solutions, a
//! quasi-exactly-solvable (QES) point solver over exact rationals, two
//! independent numerical oracles, and a reporting pipeline.

pub mod error;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod qes;
pub mod report;
pub mod series;

pub use error::{Error, Result};

//! Exact enumeration of perfect matchings (dimer coverings) of planar lattice
//! regions and small nonplanar graphs.
//!
//! The crate is organised as a pipeline: `region` builds an embedded
//! [`graph::PlanarGraph`] for a named family (or `vax` parses one from text),
//! `kasteleyn` turns it into a signed matrix whose determinant or Pfaffian
//! counts matchings exactly, and `analytics`, `formulas`, `oracle` and
//! `rewrite` build experiments on top of those counts.

pub mod analytics;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod kasteleyn;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod region;
pub mod rewrite;
pub mod vax;

pub use error::{Error, Result};
pub use graph::PlanarGraph;

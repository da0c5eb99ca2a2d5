//! Exact mutual-visibility computations on Kneser, bipartite Kneser and
//! Johnson graphs, together with the transversal, covering and Turán
//! solvers their closed formulas reduce to.

pub mod covering;
pub mod error;
pub mod family;
pub mod harness;
pub mod hypergraph;
pub mod search;
pub mod subset;
pub mod transversal;
pub mod turan;
mod value;
pub mod visibility;

pub use error::{Error, Result};
pub use family::{FamilyGraph, FamilyKind};
pub use hypergraph::Hypergraph;
pub use search::{Budget, Status};
pub use subset::KSubset;
pub use value::Value;
pub use visibility::{VertexSet, VisibilityGraph, VisibilityVariant};

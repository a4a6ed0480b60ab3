//! Strong orientations of bridgeless graphs whose diameter is bounded in
//! terms of the domination number.
//!
//! The pipeline standardizes the input with respect to a dominating set,
//! recursively contracts alternative subgraphs, orients the pieces, splices
//! the orientations back together and pulls the result back to the input.
//! Every output is measured, and exact solvers are provided for cross-checks
//! on small graphs.

pub mod alternative;
pub mod domination;
pub mod ears;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod orienter;
pub mod quotient;
pub mod search;
pub mod shapes;

pub use domination::{minimum_dominating_set, standardize, DominatingSet, StandardPair};
pub use error::{Error, Result};
pub use graph::{Arc, EdgeId, Orientation, Role, UndirectedMultigraph, VertexId};
pub use orienter::{orient, Objective};

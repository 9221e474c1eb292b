//! Exact crusade analysis and budgeted-curing SIS simulation on small graphs.
//!
//! Vertex sets are 64-bit masks ([`NodeSet`]), so graphs have at most 64
//! vertices; the exhaustive tables are further capped (see
//! [`crusade::MONOTONE_MAX_N`]).

pub mod bounds;
pub mod crusade;
pub mod exec;
pub mod graph;
pub mod nodeset;
pub mod rng;
pub mod sim;
pub mod stats;
pub mod verify;

pub use exec::Execution;
pub use graph::{Connectivity, Graph, GraphError};
pub use nodeset::NodeSet;

//! Tutte trees and fundamental Tutte trees.
//!
//! A spanning tree is a *Tutte tree* when every path in it, single vertices
//! included, is nonseparating: deleting the path's vertices leaves the graph
//! connected. It is a *fundamental Tutte tree* when every fundamental cycle
//! it induces is nonseparating. This crate decides, searches for and
//! constructs both kinds of tree, and every answer comes with a certificate
//! that can be replayed independently.

pub mod generators;
pub mod graph;
pub mod harness;
pub mod nonsep;
pub mod planar;
pub mod search;
pub mod structure;

pub use graph::{Edge, Graph, GraphError, SpanningTree, TreeError, TreePath, Vertex, VertexSet};
pub use nonsep::{Certificate, Claim, Cycle, SearchStats, Verdict, Witness};
pub use search::{SearchConfig, SearchError, VertexOrder};

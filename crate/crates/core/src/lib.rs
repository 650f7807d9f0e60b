//! Nowhere-zero flows on cubic graphs: oddness, cyclic edge-connectivity,
//! canonical 4-edge-colorings, flow partitions and balanced valuations.

pub mod budget;
pub mod circuit;
pub mod coloring;
pub mod corpus;
pub mod engine;
pub mod flow;
pub mod graph;
pub mod graph6;
pub mod maxflow;
pub mod structure;
pub mod valuation;

pub use budget::{Budget, BudgetExceeded};
pub use circuit::Circuit;
pub use graph::{EdgeCut, EdgeId, GraphError, MultiGraph, VertexId, VertexSet};
pub use graph6::{parse_graph6, to_graph6, to_sparse6, Graph6Error};

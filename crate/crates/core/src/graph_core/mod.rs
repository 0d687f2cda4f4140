//! Core data model: graphs, reduced multigraphs, partitions, index vectors,
//! tilings, and the clique primitives everything else is built on.

pub mod cliques;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod multigraph;
pub mod partition;
pub mod tiling;

pub use cliques::{common_neighborhood, enumerate_cliques};
pub use graph::Graph;
pub use io::{parse_graph, parse_multigraph, parse_partition, parse_tiling, serialize_graph, serialize_multigraph, serialize_partition};
pub use multigraph::Multigraph2;
pub use partition::{index_vector, IndexVector, Partition};
pub use tiling::{GadgetQ1, GadgetQ2, Placement, Shape, Tiling};

//! Exact limited packing, open packing, domination and packing-partition
//! invariants of small graphs, graph products, and a checker for each bound
//! relating them.

pub mod bounds;
pub mod families;
pub mod graph;
pub mod harness;
pub mod partition;
pub mod products;
pub mod solvers;
pub mod vertex_set;

pub use graph::{Graph, GraphError};
pub use partition::{chi_times_k, Partition};
pub use solvers::{Invariant, OptResult, SolveError};
pub use vertex_set::VertexSet;

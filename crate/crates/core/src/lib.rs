//! Nowhere-zero integer flows on graphs with solvable arc-transitive symmetry.
//!
//! The crate turns the inductive existence argument for nowhere-zero
//! 3-flows into an algorithm: derived series of a permutation group, orbit
//! quotients, multicover flow lifting and constructive base cases, with an
//! exhaustive cycle-space solver for the cases that need search.
//!
//! ```
//! use nzflow::{families, pipeline};
//!
//! let k55 = families::complete_bipartite(5, 5);
//! let trace = pipeline::solve_three_flow(&k55.graph, &k55.group, &Default::default()).unwrap();
//! assert!(nzflow::flow::verify_flow(&k55.graph, &trace.flow).is_nowhere_zero());
//! ```

pub mod families;
pub mod flow;
pub mod format;
pub mod graph;
pub mod partition;
pub mod perm;
pub mod pipeline;
pub mod quotient;

pub use flow::{Flow, FlowReport, SolverConfig};
pub use graph::{Graph, Orientation};
pub use partition::VertexPartition;
pub use perm::{DerivedSeries, PermGroup, Permutation};
pub use pipeline::{PipelineError, PipelineOptions, PipelineTrace};
pub use quotient::MulticoverCert;

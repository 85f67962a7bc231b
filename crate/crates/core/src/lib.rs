//! Token Sliding on graphs of girth at least five.
//!
//! Given a graph and two independent sets of size `k`, decide whether one
//! can be turned into the other by sliding tokens along edges while the
//! set stays independent. The crate provides:
//!
//! * [`kernel`]: reduction to an equivalent instance whose size depends
//!   only on `k`,
//! * [`solver`]: BFS over the reconfiguration graph with witnesses,
//! * [`oracle`]: an explicit brute-force reference used in tests,
//! * [`generator`]: seeded random and structured instances,
//! * [`instance`]: the `p ts` text format.

pub mod generator;
pub mod graph;
pub mod instance;
pub mod iso;
pub mod kernel;
pub mod oracle;
pub mod solver;

pub use graph::{Girth, Graph, Vertex, VertexSet};
pub use instance::{Instance, ReconfigurationSequence, Side, Slide};
pub use kernel::{kernelize, KernelTrace};
pub use solver::{solve_direct, solve_via_kernel, verify_sequence, Decision};

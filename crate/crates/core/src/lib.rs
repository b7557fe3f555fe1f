//! Weighted maximum clique and maximum independent set on graphs that are
//! a few edge edits away from the comparability class.
//!
//! The solvers branch on a caller-supplied set of "distant" edges: pairs
//! whose deletion (apex mode) or insertion (add mode) lands the graph in a
//! hereditary class the backend can solve directly. Each branch removes at
//! least one pair, so a set of k pairs costs at most 2^k backend calls.
//!
//! The built-in backend recognises comparability graphs, solves cliques by
//! a longest-path sweep over a transitive orientation, and solves
//! independent sets by a minimum-flow antichain computation. Brute-force
//! oracles back every solver on small inputs.

mod combo;
pub mod comparability;
pub mod distance;
mod error;
mod flow;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod solver;

pub use error::Error;
pub use graph::{Graph, SetKind, Solution};
pub use solver::{ClassBackend, DistantEdgeSet, EditMode};

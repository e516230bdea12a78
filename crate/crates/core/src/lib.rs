//! Modular decomposition of simple undirected graphs.
//!
//! A module of a graph is a vertex set whose members are indistinguishable
//! from outside: every other vertex is adjacent to all of the set or to none
//! of it. Modules that overlap no other module (the strong modules) nest
//! into a tree, the modular decomposition tree. Its internal nodes carry one
//! of three kinds: series (the children's quotient is complete), parallel
//! (edgeless), or prime (no nontrivial quotient module).
//!
//! [`decompose`] computes that tree in one pass over a recursively built
//! ordered forest: a pivot vertex splits its surroundings into distance
//! layers, recursively decomposed subforests are refined against the edges
//! crossing between layers, marked nodes are promoted to the forest roots,
//! and the resulting vertex sequence is cut into nested brackets around the
//! pivot from which the tree is assembled.
//!
//! The [`oracle`] module carries brute-force reference implementations, and
//! [`tree::validate`] certifies any claimed tree directly against the graph.

pub mod decompose;
pub mod fixture;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod tree;

pub use decompose::{decompose, decompose_traced, DecomposeTrace, StageCounters, StageTrace};
pub use graph::{Graph, GraphError, VertexSet};
pub use tree::{MDTree, NodeKind, ValidationReport};

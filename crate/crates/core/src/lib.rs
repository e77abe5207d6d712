//! Exact tooling for the common-neighbourhood edge inequality
//!
//! For a connected graph on `n` vertices,
//! `Σ_{uv ∈ E} 1 / (|N(u) ∩ N(v)| + 2) ≥ (n - 1) / 2`, with equality exactly
//! when every biconnected component is a clique. This crate evaluates that
//! sum with exact rationals and checks it from two directions:
//!
//! * [`good_pairs`]: orderings, the good-pair subgraph (always connected,
//!   a tree for every ordering iff the graph is a block graph), and the
//!   expectation argument tying its edge count to the sum;
//! * [`electrical`]: effective resistances of the unit-resistor network,
//!   whose edge sum is `n - 1`, bounded edge by edge through parallel paths.
//!
//! [`harness`] holds the generators, exhaustive enumerators, brute-force
//! oracles and the property fuzzer used to test all of the above.

pub mod electrical;
pub mod error;
pub mod good_pairs;
pub mod graph;
pub mod harness;
pub mod inequality;
pub mod rational;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, BlockDecomposition, Edge, Graph};
pub use rational::ExactRational;

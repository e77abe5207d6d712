//! Random graph generators, exhaustive enumeration, brute-force oracles and
//! the property fuzzer.

mod enumerate;
mod fuzz;
mod generate;
mod oracle;

pub use enumerate::{enumerate_connected_graphs, ConnectedGraphs, MAX_ENUMERATION_N};
pub use fuzz::{
    check_property, fuzz_run, FuzzConfig, FuzzFailure, FuzzReport, ModelFamily, Outcome, Property,
    DEFAULT_FUZZ_MAX_N,
};
pub use generate::{gen_graph, GenSpec, Model, ER_MAX_RETRIES};
pub use oracle::{independence_number, INDEPENDENCE_MAX_N};

//! Earliest and latest source-sink paths in binary-state networks.
//!
//! Arc `i` of an `m`-arc network is given weight `2^(i-1)` (earliest) or
//! `2^(m-i)` (latest) and Dijkstra is run over exact, unbounded weights. The
//! earliest path's indicator vector is the first connected state vector in
//! Binary-Addition-Tree (BAT) order, i.e. the order of the vector read as a
//! binary number with arc 1 least significant.
//!
//! Alongside the path algorithms the crate ships BAT enumeration, two
//! first-connected-vector searches, and brute-force oracles (simple-path
//! enumeration, region census, exact two-terminal reliability) used to audit
//! them on small networks.

pub mod bat;
pub mod cli;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pathfind;
pub mod state;
pub mod verify;
pub mod weight;

pub use bat::{bat_enumerate, bat_next, find_xfc_correct, find_xfc_paper, BatIter, ENUMERATION_CAP};
pub use graph::{is_st_connected, parse_network, validate_network, Arc, ArcId, Network, Warning};
pub use oracle::{
    enumerate_simple_paths, last_disconnected_greedy, oracle_extreme_path, oracle_first_connected,
    oracle_last_disconnected, region_census, reliability_exact, Objective, RegionCounts, RegionReport,
    ReliabilityResult, SimplePath, Violations,
};
pub use pathfind::{binary_dijkstra, earliest_path, latest_path, PathResult};
pub use state::StateVector;
pub use weight::{bat_precedes, lex_add, lex_cmp, vector_value, weight_of_arc, LexWeight, SchemeKind, WeightScheme};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop at node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: parallel arc between {u} and {v}")]
    ParallelArc { line: usize, u: usize, v: usize },
    #[error("line {line}: arc {u}-{v} has an endpoint outside 1..={n}")]
    EndpointOutOfRange { line: usize, u: usize, v: usize, n: usize },
    #[error("source {source_node} or sink {sink_node} outside 1..={n}")]
    TerminalOutOfRange { source_node: usize, sink_node: usize, n: usize },
    #[error("source and sink are both node {0}")]
    SourceIsSink(usize),
    #[error("header declares {declared} arcs but {found} arc lines follow")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error("arc {arc}: probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { arc: usize, value: f64 },
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arc index {index} outside 1..={m}")]
    ArcOutOfRange { index: usize, m: usize },
    #[error("weight scheme needs at least one arc")]
    EmptyScheme,
    #[error("enumeration length must be at least 1")]
    EmptyEnumeration,
    #[error("{m} arcs exceeds the enumeration cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("source cannot reach sink even with every arc working")]
    Disconnected,
    #[error("no source-sink path")]
    NoPath,
    #[error("invalid state vector `{0}`")]
    BadVector(String),
    #[error("invalid weight `{0}`")]
    BadWeight(String),
}

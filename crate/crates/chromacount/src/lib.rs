//! Deterministic approximate counting of proper k-colourings of sparse
//! graphs.
//!
//! The estimator writes `log Z` as a telescoping product over an edge
//! insertion schedule: each factor is the exact probability that the next
//! edge's endpoints receive different colours in a *truncated* instance (the
//! radius-t ball around the edge), computed by arbitrary-precision
//! list-colouring dynamic programming on a spanning tree plus enumeration
//! over the few extra-edge endpoints. Exact oracles, disagreement-percolation
//! bounds, decay profiles and a polynomial-time concentration verifier
//! support and cross-check the estimate.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --release --example estimate_psi
//! cargo run --release --example telescoping_exact
//! cargo run --release --example percolation_bound
//! cargo run --release --example coupling_swap
//! cargo run --release --example decay_profile
//! cargo run --release --example error_decomposition
//! cargo run --release --example verify_graph
//! cargo run --release --example exact_small
//! cargo run --release --example glauber_crosscheck
//! cargo run --release --example generate_graph
//! ```
//!
//! A thin `chromacount` binary wires the same library calls to the
//! `gen`, `count`, `exact`, `verify` and `diag` subcommands.

pub mod cli;
pub mod error;
pub mod estimator;
pub mod graph;
pub mod marginal;
pub mod oracles;
pub mod percolation;
pub mod sequence;
pub mod verifier;

pub use error::{Error, Result};
pub use estimator::{estimate_log_z, first_moment_formula, EstimateReport, EstimatorConfig};
pub use graph::{generate_gnp, Edge, Graph, Vertex};
pub use marginal::{disagreement_probability, joint_table, ColourLists, JointTable};
pub use oracles::{brute_force_count, chromatic_polynomial, decay_profile, exact_tv};
pub use percolation::{coupling_map_t, percolation_probability_exact, DisagreementConfig};
pub use sequence::{counting_sequence, truncated_component, verification_sequence, BuildSequence};
pub use verifier::{membership_s, verify_concentration, VerifierConfig, VerifierReport};

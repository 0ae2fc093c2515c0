//! Topology construction and edge-fault robustness analysis for DCell and
//! `(n,k)`-star interconnection networks.
//!
//! The crate builds `D_{k,n}`, `S_{n',k'}` and complete graphs, then measures
//! them: edge-connectivity, `k`-restricted edge-connectivity `λ_k`, minimum
//! `k`-edge degree `ξ_k`, super-`λ_k` classification, matching preclusion
//! numbers `mp` / `mp_1` with optimal-set classification, and the
//! independence number. Every fast routine has a brute-force counterpart in
//! [`oracle`] for cross-checking on small graphs.

pub mod budget;
pub mod claims;
pub mod graph;
pub mod independence;
pub mod matching;
pub mod mincut;
pub mod oracle;
pub mod restricted;
pub mod topology;

pub use budget::Budget;
pub use claims::{
    claims_for, run_verification, ClaimRecord, Metric, Plan, RunOptions, Status, Value, VerificationReport,
};
pub use graph::{basic_stats, parse_graph, write_graph, Graph, GraphError, StatsRecord};
pub use independence::{hypothesis_report, independence_number, AlphaResult};
pub use matching::{maximum_matching, mp1_number, mp_number, v_e, PreclusionKind, PreclusionResult, PreclusionWitness};
pub use mincut::{edge_connectivity, CutWitness};
pub use restricted::{classify_super_lambda_k, lambda_k, xi_k, LadderResult, LadderValue, SuperStatus, Verdict};
pub use topology::{dcell_star_map, gen_dcell, gen_star, size_t};

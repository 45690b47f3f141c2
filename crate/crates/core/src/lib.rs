//! Conflict-free collaborator selection for federated learning among
//! competing participants.
//!
//! A participant never uses a model that was, directly or through a chain
//! of other participants, improved with data from one of its competitors.
//! [`select_all`] builds such a usage graph greedily; [`oracle`] holds the
//! exhaustive checks used to validate it, [`partition`] the clique-cover and
//! coalition baselines, and [`fedsim`] a small federated simulator.

pub mod cli;
pub mod error;
pub mod fedsim;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod selector;

pub use error::{Error, Result};
pub use graph::{
    assumption_holds, competitor_sets, lop, violations, GuardSets, Instance, NodeSet, PathWitness, UsageGraph,
};
pub use oracle::{feasible_by_paths, optimal_step, violating_path, OracleVerdict};
pub use partition::{clique_cover, min_clique_cover, scc_coalitions, CoverMode, Partition, PartitionKind};
pub use selector::{
    candidate_set, processing_order, select_all, solve_step, CandidateDecision, SelectionTrace, StepTrace, Verdict,
};

//! Architecture recovery by dependency-graph clustering.
//!
//! The pipeline weights every module-to-module dependency by how exclusively
//! the target serves the source (fan-in based *Dedication*), then clusters the
//! weighted directed graph with greedy agglomerative modularity maximization
//! and cuts the resulting dendrogram at its best flat decomposition.
//!
//! The [`metrics`] module evaluates decompositions against reference ones
//! (MoJo, MoJoSim, MoJoFM), and measures cluster-size extremity (NED),
//! version-to-version stability, and package occupancy.

pub mod clustering;
pub mod decomposition;
pub mod dedication;
pub mod distmap;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod partitions;
pub mod report;
pub mod synth;

pub mod cli;

pub use clustering::{
    agglomerate, brute_force_best_partition, cluster, cluster_newman_unweighted, cluster_sarf,
    flat_cut, merge_gain, modularity, Algorithm, ClusterInput, ClusterState, ClusteringResult,
    Dendrogram, Merge,
};
pub use decomposition::Decomposition;
pub use dedication::{dedication_multilevel, dedication_simple, dedication_terms, DedicationTerms};
pub use error::{Error, Result};
pub use graph::{
    lift, normalize, parse_class_graph, parse_member_graph, parse_package_map, DependencyKind,
    MemberGraph, MemberRef, PackageMap, WeightedDigraph, DEFAULT_SEPARATOR, VIRTUAL_MEMBER,
};

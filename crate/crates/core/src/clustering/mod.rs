//! Directed weighted modularity clustering.

mod agglomerate;
mod brute;
mod flat_cut;
mod modularity;
mod state;

use std::fmt;
use std::str::FromStr;

pub use agglomerate::{agglomerate, Dendrogram, Merge, TIE_TOLERANCE};
pub use brute::{brute_force_best_partition, BRUTE_FORCE_LIMIT};
pub use flat_cut::flat_cut;
pub use modularity::modularity;
pub use state::{merge_gain, ClusterState};

use crate::decomposition::Decomposition;
use crate::dedication::{dedication_multilevel, dedication_simple};
use crate::error::Result;
use crate::graph::{lift, normalize, MemberGraph, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    /// Dedication-weighted modularity clustering.
    #[default]
    Sarf,
    /// Unit weights, no Dedication stage.
    Newman,
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sarf" => Ok(Algorithm::Sarf),
            "newman" => Ok(Algorithm::Newman),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Sarf => "sarf",
            Algorithm::Newman => "newman",
        })
    }
}

#[derive(Debug, Clone)]
pub enum ClusterInput {
    Members(MemberGraph),
    Modules(WeightedDigraph),
}

#[derive(Debug, Clone)]
pub struct ClusteringResult {
    pub decomposition: Decomposition,
    pub dendrogram: Dendrogram,
    /// The module-level graph that was clustered, with the weights used.
    pub weighted: WeightedDigraph,
    pub modularity: f64,
}

fn cluster_weighted(weighted: WeightedDigraph) -> Result<ClusteringResult> {
    let dendrogram = agglomerate(&weighted)?;
    let decomposition = flat_cut(&dendrogram, &weighted)?;
    let modularity = modularity(&weighted, &decomposition)?;
    Ok(ClusteringResult {
        decomposition,
        dendrogram,
        weighted,
        modularity,
    })
}

/// The weighted module graph the given algorithm clusters.
pub fn weighted_graph(
    input: &ClusterInput,
    algorithm: Algorithm,
    separator: char,
) -> Result<WeightedDigraph> {
    Ok(match (input, algorithm) {
        (ClusterInput::Members(g), Algorithm::Sarf) => dedication_multilevel(&normalize(g, separator)?),
        (ClusterInput::Members(g), Algorithm::Newman) => lift(&normalize(g, separator)?),
        (ClusterInput::Modules(g), Algorithm::Sarf) => dedication_simple(g),
        (ClusterInput::Modules(g), Algorithm::Newman) => g.unit_weighted(),
    })
}

/// Normalize, weight by Dedication (member-level score when member data is
/// present, fan-in score otherwise), agglomerate, and cut.
pub fn cluster_sarf(input: &ClusterInput, separator: char) -> Result<ClusteringResult> {
    cluster(input, Algorithm::Sarf, separator)
}

/// Unweighted baseline: every edge weighs 1.
pub fn cluster_newman_unweighted(g: &WeightedDigraph) -> Result<ClusteringResult> {
    cluster_weighted(g.unit_weighted())
}

pub fn cluster(input: &ClusterInput, algorithm: Algorithm, separator: char) -> Result<ClusteringResult> {
    cluster_weighted(weighted_graph(input, algorithm, separator)?)
}

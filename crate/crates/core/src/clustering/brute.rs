use super::modularity::modularity_of_labels;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::partitions::SetPartitions;

pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Exhaustive modularity optimum over every set partition of the vertices.
///
/// Partitions are visited in restricted-growth order over the canonical
/// vertex order, and only a strictly better value (by more than `1e-12`)
/// replaces the incumbent, so ties resolve to the lexicographically least
/// labeling. Test oracle only: the search space is the Bell number of `|V|`.
pub fn brute_force_best_partition(g: &WeightedDigraph) -> Result<(Decomposition, f64)> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "exhaustive partition search",
            limit: BRUTE_FORCE_LIMIT,
            actual: n,
        });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.total_weight() <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    let (names, edges) = g.indexed();
    let mut best: Option<(Vec<usize>, f64)> = None;
    for labels in SetPartitions::new(n) {
        let q = modularity_of_labels(n, &edges, &labels);
        if best.as_ref().is_none_or(|(_, b)| q > b + 1e-12) {
            best = Some((labels, q));
        }
    }
    let (labels, q) = best.expect("at least one partition");
    let d = Decomposition::from_labels(names.iter().map(String::as_str).zip(labels))?;
    Ok((d, q))
}

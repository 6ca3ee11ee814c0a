use super::agglomerate::Dendrogram;
use super::state::{merge_gain, ClusterState};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// Modularity gain of splitting every internal node into its two children,
/// indexed by `node - n`. Obtained by replaying the merges on `g`.
fn split_gains(dend: &Dendrogram, g: &WeightedDigraph) -> Result<Vec<f64>> {
    let (names, edges) = g.indexed();
    if names.as_slice() != dend.leaves() {
        return Err(Error::domain(
            "dendrogram leaves do not match the graph's vertices",
        ));
    }
    let n = names.len();
    let mut state = ClusterState::new(n, &edges);
    // live cluster id standing for each dendrogram node
    let mut cluster_of_node: Vec<usize> = (0..n).collect();
    let mut gains = Vec::with_capacity(dend.merges().len());
    for m in dend.merges() {
        let (a, b) = (cluster_of_node[m.left], cluster_of_node[m.right]);
        let merge = merge_gain(&state, a, b)?;
        let (_, keep) = state.merge(a, b)?;
        cluster_of_node.push(keep);
        gains.push(-merge);
    }
    Ok(gains)
}

/// Cuts the dendrogram into the flat decomposition reached by splitting
/// clusters top-down, starting from the root, as long as a split does not
/// lower modularity. A split with zero gain is taken.
pub fn flat_cut(dend: &Dendrogram, g: &WeightedDigraph) -> Result<Decomposition> {
    let gains = split_gains(dend, g)?;
    let n = dend.leaves().len();
    let mut groups = Vec::new();
    let mut stack = vec![dend.root()];
    while let Some(node) = stack.pop() {
        match dend.children(node) {
            Some((l, r)) if gains[node - n] >= 0.0 => {
                stack.push(r);
                stack.push(l);
            }
            _ => groups.push(
                dend.leaves_under(node)
                    .into_iter()
                    .map(|i| dend.leaves()[i].as_str())
                    .collect::<Vec<_>>(),
            ),
        }
    }
    Decomposition::from_groups(groups)
}

use std::collections::BTreeMap;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// Directed weighted modularity of `d` on `g`:
///
/// ```text
/// Q_D = (1/W) Σ_ij [A_ij − k_i^out · k_j^in / W] · δ(c_i, c_j)
/// ```
///
/// evaluated per cluster as `Σ_c e_cc/W − a_out(c)·a_in(c)/W²`.
pub fn modularity(g: &WeightedDigraph, d: &Decomposition) -> Result<f64> {
    if !d.universe().eq(g.vertices()) {
        return Err(Error::domain(
            "decomposition does not partition the graph's vertex set",
        ));
    }
    let w = g.total_weight();
    if w <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    let labels: Vec<&str> = g.vertices().collect();
    let cluster: BTreeMap<&str, &str> = labels
        .iter()
        .map(|v| (*v, d.cluster_of(v).expect("universe checked")))
        .collect();

    #[derive(Default)]
    struct Agg {
        internal: f64,
        out: f64,
        inn: f64,
    }
    let mut agg: BTreeMap<&str, Agg> = BTreeMap::new();
    for (s, t, x) in g.edges() {
        let (cs, ct) = (cluster[s], cluster[t]);
        agg.entry(cs).or_default().out += x;
        agg.entry(ct).or_default().inn += x;
        if cs == ct {
            agg.entry(cs).or_default().internal += x;
        }
    }
    Ok(agg
        .values()
        .map(|a| a.internal / w - a.out * a.inn / (w * w))
        .sum())
}

/// Modularity of a label assignment over dense vertex indices.
pub(crate) fn modularity_of_labels(
    n: usize,
    edges: &[(usize, usize, f64)],
    labels: &[usize],
) -> f64 {
    let w: f64 = edges.iter().map(|e| e.2).sum();
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut internal = vec![0.0; k];
    let mut out = vec![0.0; k];
    let mut inn = vec![0.0; k];
    debug_assert_eq!(labels.len(), n);
    for &(s, t, x) in edges {
        out[labels[s]] += x;
        inn[labels[t]] += x;
        if labels[s] == labels[t] {
            internal[labels[s]] += x;
        }
    }
    (0..k)
        .map(|c| internal[c] / w - out[c] * inn[c] / (w * w))
        .sum()
}

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Aggregated cluster statistics for incremental modularity updates.
///
/// Cluster ids start as vertex indices. Merging `i` and `j` keeps the smaller
/// id alive and retires the other.
#[derive(Debug, Clone)]
pub struct ClusterState {
    total_weight: f64,
    out_strength: Vec<f64>,
    in_strength: Vec<f64>,
    internal: Vec<f64>,
    // out_links[i][j] = e(i, j), in_links[i][j] = e(j, i), both for i != j
    out_links: Vec<BTreeMap<usize, f64>>,
    in_links: Vec<BTreeMap<usize, f64>>,
    alive: Vec<bool>,
    live: usize,
}

impl ClusterState {
    /// Singleton clusters over `n` vertices.
    pub fn new(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut s = ClusterState {
            total_weight: 0.0,
            out_strength: vec![0.0; n],
            in_strength: vec![0.0; n],
            internal: vec![0.0; n],
            out_links: vec![BTreeMap::new(); n],
            in_links: vec![BTreeMap::new(); n],
            alive: vec![true; n],
            live: n,
        };
        for &(a, b, w) in edges {
            s.total_weight += w;
            s.out_strength[a] += w;
            s.in_strength[b] += w;
            if a == b {
                s.internal[a] += w;
            } else {
                *s.out_links[a].entry(b).or_insert(0.0) += w;
                *s.in_links[b].entry(a).or_insert(0.0) += w;
            }
        }
        s
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive.get(i).copied().unwrap_or(false)
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn live_clusters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&i| self.alive[i])
    }

    /// `a_out(i)`: total weight leaving the vertices of cluster `i`.
    pub fn out_strength(&self, i: usize) -> f64 {
        self.out_strength[i]
    }

    /// `a_in(i)`: total weight entering the vertices of cluster `i`.
    pub fn in_strength(&self, i: usize) -> f64 {
        self.in_strength[i]
    }

    /// `e(i, j)`: weight of edges from cluster `i` to cluster `j`.
    pub fn link(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.internal[i]
        } else {
            self.out_links[i].get(&j).copied().unwrap_or(0.0)
        }
    }

    /// Live clusters sharing at least one edge with `i`, in either direction.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let mut all: Vec<usize> = self.out_links[i]
            .keys()
            .chain(self.in_links[i].keys())
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all.into_iter()
    }

    /// Modularity of the current clustering, from the aggregates.
    pub fn modularity(&self) -> f64 {
        let w = self.total_weight;
        self.live_clusters()
            .map(|c| self.internal[c] / w - self.out_strength[c] * self.in_strength[c] / (w * w))
            .sum()
    }

    fn gain_unchecked(&self, i: usize, j: usize) -> f64 {
        let w = self.total_weight;
        let between = self.link(i, j) + self.link(j, i);
        let expected = (self.out_strength[i] * self.in_strength[j]
            + self.out_strength[j] * self.in_strength[i])
            / w;
        (between - expected) / w
    }

    /// Merges `i` and `j`; the smaller id survives. Returns the modularity
    /// change and the surviving id.
    pub fn merge(&mut self, i: usize, j: usize) -> Result<(f64, usize)> {
        let gain = merge_gain(self, i, j)?;
        let (keep, gone) = if i < j { (i, j) } else { (j, i) };

        let between = self.link(keep, gone) + self.link(gone, keep);
        self.internal[keep] += self.internal[gone] + between;
        self.out_strength[keep] += self.out_strength[gone];
        self.in_strength[keep] += self.in_strength[gone];

        let gone_out = std::mem::take(&mut self.out_links[gone]);
        let gone_in = std::mem::take(&mut self.in_links[gone]);
        self.out_links[keep].remove(&gone);
        self.in_links[keep].remove(&gone);

        for (k, w) in gone_out {
            if k == keep {
                continue;
            }
            *self.out_links[keep].entry(k).or_insert(0.0) += w;
            let back = self.in_links[k].remove(&gone).unwrap_or(0.0);
            *self.in_links[k].entry(keep).or_insert(0.0) += back;
        }
        for (k, w) in gone_in {
            if k == keep {
                continue;
            }
            *self.in_links[keep].entry(k).or_insert(0.0) += w;
            let fwd = self.out_links[k].remove(&gone).unwrap_or(0.0);
            *self.out_links[k].entry(keep).or_insert(0.0) += fwd;
        }

        self.internal[gone] = 0.0;
        self.out_strength[gone] = 0.0;
        self.in_strength[gone] = 0.0;
        self.alive[gone] = false;
        self.live -= 1;
        Ok((gain, keep))
    }
}

/// Modularity change of merging clusters `i` and `j`:
///
/// ```text
/// ΔQ = [e(i,j) + e(j,i) − (a_out(i)·a_in(j) + a_out(j)·a_in(i)) / W] / W
/// ```
pub fn merge_gain(s: &ClusterState, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::domain("cannot merge a cluster with itself"));
    }
    if !s.is_alive(i) || !s.is_alive(j) {
        return Err(Error::domain(format!("cluster {i} or {j} is not live")));
    }
    if s.total_weight <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    Ok(s.gain_unchecked(i, j))
}

//! Greedy agglomerative modularity maximization.
//!
//! Starting from singletons, the pair of clusters with the largest modularity
//! gain is merged until one cluster remains. Candidate pairs live in a
//! max-heap with lazy invalidation: each cluster carries a version stamp that
//! changes whenever it absorbs another cluster, and stale entries are skipped
//! when popped.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::modularity::modularity_of_labels;
use super::state::{merge_gain, ClusterState};
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// Gains within this distance of the best are treated as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Merges between full recomputations of the tracked modularity.
const RESYNC_INTERVAL: usize = 1024;
const MAX_DRIFT: f64 = 1e-6;

/// One merge of the dendrogram. Node ids `0..n` are leaves (vertices in
/// canonical order); the `k`-th merge creates node `n + k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub into: usize,
    pub q_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    leaves: Vec<String>,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn root(&self) -> usize {
        self.leaves.len() + self.merges.len() - 1
    }

    /// Children of an internal node, `None` for leaves.
    pub fn children(&self, node: usize) -> Option<(usize, usize)> {
        let n = self.leaves.len();
        (node >= n).then(|| {
            let m = &self.merges[node - n];
            (m.left, m.right)
        })
    }

    /// Leaf indices under `node`, ascending.
    pub fn leaves_under(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match self.children(x) {
                Some((l, r)) => {
                    stack.push(l);
                    stack.push(r);
                }
                None => out.push(x),
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dendrogram serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Dendrogram = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.leaves.len();
        if n == 0 || self.merges.len() != n - 1 {
            return Err(Error::domain(format!(
                "dendrogram over {n} leaves must have {} merges, has {}",
                n.saturating_sub(1),
                self.merges.len()
            )));
        }
        let mut consumed = vec![false; 2 * n - 1];
        for (k, m) in self.merges.iter().enumerate() {
            let into = n + k;
            if m.into != into || m.left >= into || m.right >= into || m.left == m.right {
                return Err(Error::domain(format!("malformed merge record {k}")));
            }
            for c in [m.left, m.right] {
                if std::mem::replace(&mut consumed[c], true) {
                    return Err(Error::domain(format!("node {c} merged twice")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gain: f64,
    lo: usize,
    hi: usize,
    stamp_lo: u32,
    stamp_hi: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Candidate {
    // larger gain first, then lexicographically smaller pair
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| (other.lo, other.hi).cmp(&(self.lo, self.hi)))
            .then_with(|| (other.stamp_lo, other.stamp_hi).cmp(&(self.stamp_lo, self.stamp_hi)))
    }
}

struct Engine {
    state: ClusterState,
    stamps: Vec<u32>,
    heap: BinaryHeap<Candidate>,
}

impl Engine {
    fn candidate(&self, a: usize, b: usize) -> Candidate {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Candidate {
            gain: merge_gain(&self.state, lo, hi).expect("live distinct clusters"),
            lo,
            hi,
            stamp_lo: self.stamps[lo],
            stamp_hi: self.stamps[hi],
        }
    }

    fn is_current(&self, c: &Candidate) -> bool {
        self.state.is_alive(c.lo)
            && self.state.is_alive(c.hi)
            && self.stamps[c.lo] == c.stamp_lo
            && self.stamps[c.hi] == c.stamp_hi
    }

    fn pop_current(&mut self) -> Option<Candidate> {
        while let Some(c) = self.heap.pop() {
            if self.is_current(&c) {
                return Some(c);
            }
        }
        None
    }

    /// Best current candidate; among gains within [`TIE_TOLERANCE`] of the
    /// best, the lexicographically least pair wins.
    fn select(&mut self) -> Option<Candidate> {
        let best = self.pop_current()?;
        let mut tied = vec![best];
        while let Some(top) = self.heap.peek() {
            if top.gain < best.gain - TIE_TOLERANCE {
                break;
            }
            let c = self.heap.pop().expect("peeked");
            if self.is_current(&c) {
                tied.push(c);
            }
        }
        let pick = tied
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| (c.lo, c.hi))
            .map(|(i, _)| i)
            .expect("non-empty");
        let chosen = tied.swap_remove(pick);
        self.heap.extend(tied);
        Some(chosen)
    }

    /// Seeds the heap with every pair of live clusters. Used once no
    /// edge-connected pair remains.
    fn seed_all_pairs(&mut self) {
        let live: Vec<usize> = self.state.live_clusters().collect();
        for (x, &a) in live.iter().enumerate() {
            for &b in &live[x + 1..] {
                let c = self.candidate(a, b);
                self.heap.push(c);
            }
        }
    }
}

/// Builds the full merge tree of `g` by greedy modularity agglomeration.
pub fn agglomerate(g: &WeightedDigraph) -> Result<Dendrogram> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.total_weight() <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    let (leaves, edges) = g.indexed();
    let n = leaves.len();

    let mut engine = Engine {
        state: ClusterState::new(n, &edges),
        stamps: vec![0; n],
        heap: BinaryHeap::new(),
    };
    for &(a, b, _) in &edges {
        if a < b || engine.state.link(b, a) == 0.0 {
            let c = engine.candidate(a, b);
            engine.heap.push(c);
        }
    }

    // node id currently representing each live cluster id
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut q = engine.state.modularity();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    let mut connected_phase = true;

    while engine.state.live_count() > 1 {
        let chosen = match engine.select() {
            Some(c) => c,
            None => {
                debug_assert!(connected_phase, "all-pairs phase never runs dry");
                connected_phase = false;
                engine.seed_all_pairs();
                continue;
            }
        };
        let (gain, keep) = engine
            .state
            .merge(chosen.lo, chosen.hi)
            .expect("selected pair is live");
        let gone = chosen.hi;
        engine.stamps[keep] += 1;

        let moved = std::mem::take(&mut members[gone]);
        for &v in &moved {
            labels[v] = keep;
        }
        members[keep].extend(moved);

        let into = n + merges.len();
        q += gain;
        merges.push(Merge {
            left: node_of[keep],
            right: node_of[gone],
            into,
            q_after: q,
        });
        node_of[keep] = into;

        if merges.len() % RESYNC_INTERVAL == 0 {
            let exact = modularity_of_labels(n, &edges, &labels);
            assert!(
                (exact - q).abs() < MAX_DRIFT,
                "modularity drift {} after {} merges",
                (exact - q).abs(),
                merges.len()
            );
            q = exact;
        }

        let partners: Vec<usize> = if connected_phase {
            engine.state.neighbors(keep).collect()
        } else {
            engine.state.live_clusters().filter(|&c| c != keep).collect()
        };
        for other in partners {
            let c = engine.candidate(keep, other);
            engine.heap.push(c);
        }
    }

    // one cluster: Q_D is identically zero
    if let Some(last) = merges.last_mut() {
        last.q_after = 0.0;
    }
    Ok(Dendrogram { leaves, merges })
}

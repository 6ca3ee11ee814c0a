//! Seeded synthetic graphs for tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::Decomposition;
use crate::graph::{MemberGraph, MemberRef, WeightedDigraph, VIRTUAL_MEMBER};

pub const SEED_VAR: &str = "SARF_KIT_SEED";

/// `SARF_KIT_SEED` if set and numeric, `default` otherwise.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Directed planted-partition graph: `communities` groups of `size` vertices,
/// each ordered pair linked with probability `p_in` inside a group and
/// `p_out` across. Unit weights. Returns the graph and the planted groups.
pub fn planted_partition(
    communities: usize,
    size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> (WeightedDigraph, Decomposition) {
    let mut r = rng(seed);
    let name = |c: usize, i: usize| format!("g{c}v{i:02}");
    let mut g = WeightedDigraph::new();
    let mut labels = Vec::new();
    for c in 0..communities {
        for i in 0..size {
            g.add_vertex(name(c, i));
            labels.push((name(c, i), c));
        }
    }
    for (cu, iu) in (0..communities).flat_map(|c| (0..size).map(move |i| (c, i))) {
        for (cv, iv) in (0..communities).flat_map(|c| (0..size).map(move |i| (c, i))) {
            if (cu, iu) == (cv, iv) {
                continue;
            }
            let p = if cu == cv { p_in } else { p_out };
            if r.random_bool(p) {
                g.add_edge(&name(cu, iu), &name(cv, iv), 1.0).expect("valid edge");
            }
        }
    }
    let planted = Decomposition::from_labels(labels.iter().map(|(n, c)| (n.as_str(), *c)))
        .expect("non-empty groups");
    (g, planted)
}

/// Copy of `g` plus a vertex `sink` that every other vertex depends on.
pub fn with_omnipresent_sink(g: &WeightedDigraph, sink: &str) -> WeightedDigraph {
    let mut out = g.clone();
    out.add_vertex(sink);
    for v in g.vertices() {
        out.add_edge(v, sink, 1.0).expect("sink is a fresh vertex");
    }
    out
}

/// Copy of `g` with `round(fraction × E)` edges (at least one) given new
/// random targets, avoiding self-loops and existing edges. Weights travel
/// with the edge and the vertex set is unchanged.
pub fn rewire(g: &WeightedDigraph, fraction: f64, seed: u64) -> WeightedDigraph {
    let mut r = rng(seed);
    let vertices: Vec<&str> = g.vertices().collect();
    let edges: Vec<(String, String, f64)> = g
        .edges()
        .map(|(s, d, w)| (s.to_owned(), d.to_owned(), w))
        .collect();
    if edges.is_empty() || vertices.len() < 3 {
        return g.clone();
    }
    let count = ((fraction * edges.len() as f64).round() as usize).clamp(1, edges.len());
    let chosen: BTreeSet<usize> = index::sample(&mut r, edges.len(), count).into_iter().collect();
    let mut present: BTreeSet<(String, String)> =
        edges.iter().map(|(s, d, _)| (s.clone(), d.clone())).collect();
    let mut out_edges = Vec::with_capacity(edges.len());
    for (i, (src, dst, w)) in edges.iter().enumerate() {
        if !chosen.contains(&i) {
            out_edges.push((src.clone(), dst.clone(), *w));
            continue;
        }
        let mut target = None;
        for _ in 0..64 {
            let t = vertices[r.random_range(0..vertices.len())];
            if t != src && !present.contains(&(src.clone(), t.to_owned())) {
                target = Some(t.to_owned());
                break;
            }
        }
        match target {
            Some(t) => {
                present.remove(&(src.clone(), dst.clone()));
                present.insert((src.clone(), t.clone()));
                out_edges.push((src.clone(), t, *w));
            }
            None => out_edges.push((src.clone(), dst.clone(), *w)),
        }
    }
    let mut out = WeightedDigraph::new();
    for v in &vertices {
        out.add_vertex(*v);
    }
    for (s, d, w) in out_edges {
        out.add_edge(&s, &d, w).expect("valid edge");
    }
    out
}

/// Erdős–Rényi style digraph over `n` vertices `v00`, `v01`, ... with
/// random weights in `[0.5, 2)`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> WeightedDigraph {
    let mut r = rng(seed);
    let mut g = WeightedDigraph::new();
    let names: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    for v in &names {
        g.add_vertex(v.clone());
    }
    for a in &names {
        for b in &names {
            if a != b && r.random_bool(p) {
                g.add_edge(a, b, r.random_range(0.5..2.0)).expect("valid edge");
            }
        }
    }
    g
}

/// Random member graph over `modules` modules with 1..=`max_members` members
/// each. Each ordered pair of members in different modules is linked with
/// probability `p`; class-level references appear with probability `p / 2`.
pub fn random_member_graph(modules: usize, max_members: usize, p: f64, seed: u64) -> MemberGraph {
    let mut r = rng(seed);
    let mut g = MemberGraph::new();
    let mut members = Vec::new();
    for m in 0..modules {
        let k = r.random_range(1..=max_members.max(1));
        for f in 0..k {
            let member = MemberRef::new(format!("M{m:02}"), format!("f{f}"));
            g.declare(&member);
            members.push(member);
        }
    }
    for a in &members {
        for b in &members {
            if a.module == b.module {
                continue;
            }
            if r.random_bool(p) {
                g.add_edge(a.clone(), b.clone());
            }
        }
        for m in 0..modules {
            let module = format!("M{m:02}");
            if module != a.module && r.random_bool(p / 2.0) {
                g.add_edge(a.clone(), MemberRef::new(module, VIRTUAL_MEMBER));
            }
        }
    }
    g
}

use std::collections::BTreeSet;

use proptest::prelude::*;
use sarf_kit::metrics::{max_mno, max_mno_exhaustive, mno, mno_brute_force, mojo};
use sarf_kit::partitions::SetPartitions;
use sarf_kit::synth::random_member_graph;
use sarf_kit::{
    agglomerate, brute_force_best_partition, dedication_multilevel, dedication_simple, flat_cut,
    lift, merge_gain, modularity, normalize, ClusterState, Decomposition, MemberGraph, MemberRef,
    WeightedDigraph, DEFAULT_SEPARATOR,
};

fn name(i: usize) -> String {
    format!("v{i:02}")
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = WeightedDigraph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0.1f64..5.0), 1..(n * n))
            .prop_filter_map("needs a non-loop edge", move |edges| {
                let mut g = WeightedDigraph::new();
                for i in 0..n {
                    g.add_vertex(name(i));
                }
                for (a, b, w) in edges {
                    if a != b {
                        g.add_edge(&name(a), &name(b), w).unwrap();
                    }
                }
                (g.edge_count() > 0).then_some(g)
            })
    })
}

fn with_labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, n)
}

fn decomposition(labels: &[usize]) -> Decomposition {
    let names: Vec<String> = (0..labels.len()).map(name).collect();
    Decomposition::from_labels(names.iter().map(String::as_str).zip(labels.iter().copied())).unwrap()
}

/// Term-by-term evaluation over all ordered vertex pairs.
fn modularity_oracle(g: &WeightedDigraph, d: &Decomposition) -> f64 {
    let w = g.total_weight();
    let vs: Vec<&str> = g.vertices().collect();
    let mut q = 0.0;
    for &i in &vs {
        for &j in &vs {
            if d.cluster_of(i) != d.cluster_of(j) {
                continue;
            }
            let a = g.weight(i, j).unwrap_or(0.0);
            q += a - g.out_strength(i) * g.in_strength(j) / w;
        }
    }
    q / w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn modularity_matches_pairwise_sum(
        (g, labels) in graph_strategy(10).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), with_labels(n))
        })
    ) {
        let d = decomposition(&labels);
        let fast = modularity(&g, &d).unwrap();
        let slow = modularity_oracle(&g, &d);
        prop_assert!((fast - slow).abs() < 1e-9, "{fast} vs {slow}");
        prop_assert!(fast <= 1.0 + 1e-12);
    }

    #[test]
    fn merge_gain_is_modularity_difference(
        (g, picks) in graph_strategy(9).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), prop::collection::vec((0..n, 0..n), 1..n))
        })
    ) {
        let (_, edges) = g.indexed();
        let n = g.vertex_count();
        let mut s = ClusterState::new(n, &edges);
        for (a, b) in picks {
            let live: Vec<usize> = s.live_clusters().collect();
            if live.len() < 2 {
                break;
            }
            let i = live[a % live.len()];
            let j = live[b % live.len()];
            if i == j {
                prop_assert!(merge_gain(&s, i, j).is_err());
                continue;
            }
            let before = s.modularity();
            let predicted = merge_gain(&s, i, j).unwrap();
            let (gain, keep) = s.merge(i, j).unwrap();
            prop_assert_eq!(keep, i.min(j));
            prop_assert!((gain - predicted).abs() < 1e-12);
            prop_assert!((s.modularity() - before - gain).abs() < 1e-9);
        }
    }

    #[test]
    fn dendrogram_shape_and_cut_quality(g in graph_strategy(9)) {
        let dend = agglomerate(&g).unwrap();
        let n = g.vertex_count();
        prop_assert_eq!(dend.merges().len(), n - 1);
        prop_assert_eq!(dend.merges().last().unwrap().q_after, 0.0);
        let mut seen = BTreeSet::new();
        for (k, m) in dend.merges().iter().enumerate() {
            prop_assert_eq!(m.into, n + k);
            prop_assert!(m.left < m.into && m.right < m.into);
            prop_assert!(seen.insert(m.left) && seen.insert(m.right));
        }
        prop_assert_eq!(dend.leaves_under(dend.root()).len(), n);

        let cut = flat_cut(&dend, &g).unwrap();
        let q = modularity(&g, &cut).unwrap();
        let (_, best) = brute_force_best_partition(&g).unwrap();
        prop_assert!(q >= -1e-12);
        prop_assert!(q <= best + 1e-9);
        prop_assert_eq!(agglomerate(&g).unwrap(), dend);
    }

    #[test]
    fn one_member_per_module_reduces_to_fanin_dedication(
        edges in prop::collection::vec((0usize..8, 0usize..8), 1..30)
    ) {
        let mut mg = MemberGraph::new();
        for (a, b) in edges {
            if a != b {
                mg.add_edge(MemberRef::new(name(a), "m"), MemberRef::new(name(b), "m"));
            }
        }
        prop_assume!(mg.edge_count() > 0);
        let multi = dedication_multilevel(&mg);
        let simple = dedication_simple(&lift(&mg));
        prop_assert_eq!(multi, simple);
    }

    #[test]
    fn dedication_sums(seed in any::<u64>()) {
        let mg = random_member_graph(8, 4, 0.15, seed);
        let g = normalize(&mg, DEFAULT_SEPARATOR).unwrap();
        let simple = dedication_simple(&lift(&g));
        let multi = dedication_multilevel(&g);
        for b in simple.vertices() {
            if simple.fanin(b) == 0 {
                continue;
            }
            prop_assert!((simple.in_strength(b) - 1.0).abs() < 1e-9);
            let s = multi.in_strength(b);
            prop_assert!(s > 0.0 && s <= 1.0 + 1e-9, "{b}: {s}");
        }
    }

    #[test]
    fn mno_matches_breadth_first_search(
        (c, a) in (1usize..=6).prop_flat_map(|n| (with_labels(n), with_labels(n)))
    ) {
        let (c, a) = (decomposition(&c), decomposition(&a));
        prop_assert_eq!(mno(&c, &a).unwrap(), mno_brute_force(&c, &a).unwrap());
        prop_assert_eq!(mojo(&c, &a).unwrap(), mojo(&a, &c).unwrap());
        prop_assert!(mno(&c, &a).unwrap() <= max_mno(&a));
    }
}

#[test]
fn max_mno_matches_exhaustive_enumeration() {
    for n in 1..=7 {
        let mut shapes = BTreeSet::new();
        for labels in SetPartitions::new(n) {
            let a = decomposition(&labels);
            let mut sizes = a.cluster_sizes();
            sizes.sort_unstable();
            if shapes.insert(sizes) {
                assert_eq!(max_mno(&a), max_mno_exhaustive(&a).unwrap(), "{labels:?}");
            }
        }
    }
}

#[test]
fn empty_and_zero_weight_inputs_are_rejected() {
    let empty = WeightedDigraph::new();
    assert!(agglomerate(&empty).is_err());
    let mut isolated = WeightedDigraph::new();
    isolated.add_vertex("a");
    isolated.add_vertex("b");
    assert!(agglomerate(&isolated).is_err());
    assert!(brute_force_best_partition(&isolated).is_err());
}

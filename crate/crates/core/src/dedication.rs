//! Fan-in based edge weighting.
//!
//! Dedication scores how exclusively a dependency target serves its source.
//! In the module-level form an edge `(A, B)` weighs `1 / fanin(B)`. When
//! member-level data is available, each lifted edge `(A, B)` weighs
//!
//! ```text
//! D_M(A, B) = Σ_{m ∈ M_AB} 1 / (xfanin(m) · mx(B))
//! ```
//!
//! where `M_AB` are the members of `B` used by `A`, `xfanin(m)` counts the
//! members outside `B` that use `m`, and `mx(B)` counts the members of `B`
//! used from outside. The virtual class member is an ordinary member here.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{lift, MemberGraph, WeightedDigraph};

/// The ingredients of the member-level score for one module pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedicationTerms {
    /// Members of the target used by some member of the source (`M_AB`).
    pub members_depended: BTreeSet<String>,
    /// For every externally used member of the target, the number of
    /// external members using it.
    pub external_fanin: BTreeMap<String, usize>,
    /// Number of the target's members used from outside (`mx`).
    pub externally_depended: usize,
}

impl DedicationTerms {
    pub fn score(&self) -> f64 {
        let mx = self.externally_depended as f64;
        self.members_depended
            .iter()
            .map(|m| 1.0 / (self.external_fanin[m] as f64 * mx))
            .sum()
    }
}

/// Re-weights every edge `(A, B)` to `1 / fanin(B)`. Input weights are ignored.
pub fn dedication_simple(g: &WeightedDigraph) -> WeightedDigraph {
    let mut fanin: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, d, _) in g.edges() {
        *fanin.entry(d).or_default() += 1;
    }
    g.reweighted(|_, d, _| 1.0 / fanin[d] as f64)
}

/// Number of distinct members outside each member's module that depend on it.
fn external_fanin(g: &MemberGraph) -> BTreeMap<(&str, &str), usize> {
    let mut xfanin = BTreeMap::new();
    for (_, d) in g.cross_module_edges() {
        *xfanin
            .entry((d.module.as_str(), d.member.as_str()))
            .or_default() += 1;
    }
    xfanin
}

pub fn dedication_terms(g: &MemberGraph, source: &str, target: &str) -> Result<DedicationTerms> {
    let members_depended: BTreeSet<String> = g
        .cross_module_edges()
        .filter(|(s, d)| s.module == source && d.module == target)
        .map(|(_, d)| d.member.clone())
        .collect();
    if members_depended.is_empty() {
        return Err(Error::domain(format!(
            "no member of `{source}` depends on a member of `{target}`"
        )));
    }
    let external_fanin: BTreeMap<String, usize> = external_fanin(g)
        .into_iter()
        .filter(|((module, _), _)| *module == target)
        .map(|((_, member), n)| (member.to_owned(), n))
        .collect();
    Ok(DedicationTerms {
        members_depended,
        externally_depended: external_fanin.len(),
        external_fanin,
    })
}

/// Lifts `g` to module level and weights each edge with the member-level
/// Dedication score. Expects a normalized graph; intra-module edges are
/// ignored either way.
pub fn dedication_multilevel(g: &MemberGraph) -> WeightedDigraph {
    let xfanin = external_fanin(g);
    let mut mx: BTreeMap<&str, usize> = BTreeMap::new();
    for (module, _) in xfanin.keys() {
        *mx.entry(module).or_default() += 1;
    }
    let mut used: BTreeMap<(&str, &str), BTreeSet<&str>> = BTreeMap::new();
    for (s, d) in g.cross_module_edges() {
        used.entry((s.module.as_str(), d.module.as_str()))
            .or_default()
            .insert(d.member.as_str());
    }
    lift(g).reweighted(|a, b, _| {
        let mx_b = mx[b] as f64;
        used[&(a, b)]
            .iter()
            .map(|m| 1.0 / (xfanin[&(b, *m)] as f64 * mx_b))
            .sum()
    })
}

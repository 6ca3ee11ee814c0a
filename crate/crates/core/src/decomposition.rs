//! Flat partitions of a module set into named clusters.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of a module universe into named, non-empty, disjoint clusters.
///
/// Names only matter for presentation; every measure in this crate works on
/// the induced partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    clusters: BTreeMap<String, BTreeSet<String>>,
    owner: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    universe_size: usize,
    clusters: BTreeMap<String, Vec<String>>,
}

impl Decomposition {
    pub fn new(clusters: BTreeMap<String, BTreeSet<String>>) -> Result<Self> {
        let mut owner = BTreeMap::new();
        for (name, members) in &clusters {
            if members.is_empty() {
                return Err(Error::InvalidDecomposition(format!("cluster `{name}` is empty")));
            }
            for m in members {
                if let Some(prev) = owner.insert(m.clone(), name.clone()) {
                    return Err(Error::InvalidDecomposition(format!(
                        "module `{m}` is in both `{prev}` and `{name}`"
                    )));
                }
            }
        }
        Ok(Decomposition { clusters, owner })
    }

    /// Builds a decomposition from anonymous groups, naming them `C1`, `C2`, ...
    /// in order of each group's lexicographically smallest module.
    pub fn from_groups<I, G, S>(groups: I) -> Result<Self>
    where
        I: IntoIterator<Item = G>,
        G: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut sets: Vec<BTreeSet<String>> = groups
            .into_iter()
            .map(|g| g.into_iter().map(Into::into).collect())
            .collect();
        if let Some(i) = sets.iter().position(BTreeSet::is_empty) {
            return Err(Error::InvalidDecomposition(format!("group {i} is empty")));
        }
        sets.sort_by(|a, b| a.first().cmp(&b.first()));
        Self::new(
            sets.into_iter()
                .enumerate()
                .map(|(i, s)| (format!("C{}", i + 1), s))
                .collect(),
        )
    }

    /// Groups modules by label: modules with equal labels share a cluster.
    pub fn from_labels<'a, L: Ord>(
        labels: impl IntoIterator<Item = (&'a str, L)>,
    ) -> Result<Self> {
        let mut by_label: BTreeMap<L, Vec<&str>> = BTreeMap::new();
        for (m, l) in labels {
            by_label.entry(l).or_default().push(m);
        }
        Self::from_groups(by_label.into_values())
    }

    pub fn single_cluster<'a>(universe: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        Self::from_groups([universe])
    }

    pub fn singletons<'a>(universe: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        Self::from_groups(universe.into_iter().map(|m| [m]))
    }

    pub fn universe_size(&self) -> usize {
        self.owner.len()
    }

    pub fn universe(&self) -> impl Iterator<Item = &str> {
        self.owner.keys().map(String::as_str)
    }

    pub fn universe_set(&self) -> BTreeSet<String> {
        self.owner.keys().cloned().collect()
    }

    pub fn contains(&self, module: &str) -> bool {
        self.owner.contains_key(module)
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn clusters(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.clusters.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn cluster_of(&self, module: &str) -> Option<&str> {
        self.owner.get(module).map(String::as_str)
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        self.clusters.values().map(BTreeSet::len).collect()
    }

    pub fn same_universe(&self, other: &Decomposition) -> bool {
        self.owner.len() == other.owner.len() && self.owner.keys().eq(other.owner.keys())
    }

    /// True when both decompositions induce the same partition, whatever the
    /// cluster names.
    pub fn same_partition(&self, other: &Decomposition) -> bool {
        let canon = |d: &Decomposition| -> BTreeSet<BTreeSet<String>> {
            d.clusters.values().cloned().collect()
        };
        self.same_universe(other) && canon(self) == canon(other)
    }

    /// Keeps only the modules in `keep`; clusters left empty disappear and
    /// the remaining ones keep their names.
    pub fn restricted_to(&self, keep: &BTreeSet<String>) -> Decomposition {
        let clusters: BTreeMap<String, BTreeSet<String>> = self
            .clusters
            .iter()
            .map(|(n, s)| (n.clone(), s.intersection(keep).cloned().collect::<BTreeSet<_>>()))
            .filter(|(_, s)| !s.is_empty())
            .collect();
        Decomposition::new(clusters).expect("restriction of a partition is a partition")
    }

    /// Cluster labels (indices in name order) for each module of `universe`,
    /// in the given order. Panics if a module is missing.
    pub(crate) fn labels_for(&self, universe: &[&str]) -> Vec<usize> {
        let index: BTreeMap<&str, usize> = self
            .clusters
            .keys()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        universe
            .iter()
            .map(|m| index[self.owner[*m].as_str()])
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = DecompositionJson {
            universe_size: self.universe_size(),
            clusters: self
                .clusters
                .iter()
                .map(|(n, s)| (n.clone(), s.iter().cloned().collect()))
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("decomposition serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DecompositionJson = serde_json::from_str(text)?;
        let mut clusters = BTreeMap::new();
        for (name, members) in doc.clusters {
            let set: BTreeSet<String> = members.iter().cloned().collect();
            if set.len() != members.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "cluster `{name}` lists a module twice"
                )));
            }
            clusters.insert(name, set);
        }
        let d = Decomposition::new(clusters)?;
        if d.universe_size() != doc.universe_size {
            return Err(Error::InvalidDecomposition(format!(
                "universe_size is {} but clusters cover {} modules",
                doc.universe_size,
                d.universe_size()
            )));
        }
        Ok(d)
    }
}

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{parent_package, PackageMap};

/// Clusters of this size or smaller are folded into their parent package.
pub const DEFAULT_AUTH_THRESHOLD: usize = 5;

/// Occupancy above this percentage makes a package structure a poor
/// reference decomposition.
pub const OCCUPANCY_LIMIT: f64 = 40.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Occupancy {
    pub percent: f64,
    pub largest_package: String,
    pub largest_size: usize,
    pub modules: usize,
    pub packages: usize,
}

impl Occupancy {
    pub fn exceeds_limit(&self) -> bool {
        self.percent > OCCUPANCY_LIMIT
    }
}

/// Share of modules held by the most populous package (exact paths, no
/// subpackage aggregation). Ties pick the lexicographically first package.
pub fn occupancy(p: &PackageMap) -> Result<Occupancy> {
    if p.is_empty() {
        return Err(Error::domain("occupancy of an empty package map"));
    }
    let packages = p.packages();
    let (name, size) = packages
        .iter()
        .map(|(name, mods)| (*name, mods.len()))
        .fold(("", 0), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(Occupancy {
        percent: 100.0 * size as f64 / p.len() as f64,
        largest_package: name.to_owned(),
        largest_size: size,
        modules: p.len(),
        packages: packages.len(),
    })
}

fn depth(path: &str) -> usize {
    path.split('.').count()
}

/// Reference decomposition derived from package structure: one cluster per
/// package, then any cluster with at most `threshold` modules that has a
/// parent package is merged into the parent (created if no module sits there
/// directly). Deepest paths go first, lexicographically within a depth,
/// until no such cluster is left. Clusters are named by package path.
pub fn auth_decomposition(p: &PackageMap, threshold: usize) -> Result<Decomposition> {
    let mut clusters: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (module, package) in p.iter() {
        clusters
            .entry(package.to_owned())
            .or_default()
            .insert(module.to_owned());
    }
    loop {
        let next = clusters
            .iter()
            .filter(|(path, mods)| mods.len() <= threshold && parent_package(path).is_some())
            .map(|(path, _)| path)
            .min_by(|a, b| depth(b).cmp(&depth(a)).then_with(|| a.cmp(b)))
            .cloned();
        let Some(path) = next else { break };
        let mods = clusters.remove(&path).expect("candidate exists");
        let parent = parent_package(&path).expect("filtered on parent").to_owned();
        clusters.entry(parent).or_default().extend(mods);
    }
    Decomposition::new(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packages(layout: &[(&str, usize)]) -> PackageMap {
        let mut p = PackageMap::new();
        let mut i = 0;
        for (pkg, n) in layout {
            for _ in 0..*n {
                p.assign(&format!("M{i:03}"), pkg).unwrap();
                i += 1;
            }
        }
        p
    }

    fn sizes(d: &Decomposition) -> Vec<(String, usize)> {
        d.clusters().map(|(n, s)| (n.to_owned(), s.len())).collect()
    }

    #[test]
    fn small_subpackage_folds_into_parent() {
        let d = auth_decomposition(&packages(&[("a", 6), ("a.b", 3)]), 5).unwrap();
        assert_eq!(sizes(&d), vec![("a".into(), 9)]);
    }

    #[test]
    fn large_packages_are_untouched() {
        let d = auth_decomposition(&packages(&[("a", 6), ("b", 7)]), 5).unwrap();
        assert_eq!(sizes(&d), vec![("a".into(), 6), ("b".into(), 7)]);
    }

    #[test]
    fn small_root_cluster_remains() {
        let d = auth_decomposition(&packages(&[("a", 2), ("a.b", 2)]), 5).unwrap();
        assert_eq!(sizes(&d), vec![("a".into(), 4)]);
    }

    #[test]
    fn missing_parents_are_created_and_cascade() {
        // x.y.z (2) -> x.y (created, 2) -> x (created, 2 + 3) ; x.w has 6 and stays
        let d = auth_decomposition(&packages(&[("x.y.z", 2), ("x.q", 3), ("x.w", 6)]), 5).unwrap();
        assert_eq!(sizes(&d), vec![("x".into(), 5), ("x.w".into(), 6)]);
    }

    #[test]
    fn threshold_zero_keeps_packages() {
        let d = auth_decomposition(&packages(&[("a", 1), ("a.b", 1)]), 0).unwrap();
        assert_eq!(d.cluster_count(), 2);
    }

    #[test]
    fn occupancy_examples() {
        let o = occupancy(&packages(&[("a", 5), ("b", 5), ("c", 10)])).unwrap();
        assert_eq!(o.percent, 50.0);
        assert_eq!(o.largest_package, "c");
        assert!(o.exceeds_limit());
        let o = occupancy(&packages(&[("a", 3)])).unwrap();
        assert_eq!(o.percent, 100.0);
        let o = occupancy(&packages(&[("a", 5), ("b", 5), ("c", 5), ("d", 5)])).unwrap();
        assert_eq!(o.percent, 25.0);
        assert!(!o.exceeds_limit());
        // subpackages are not folded in
        let o = occupancy(&packages(&[("a", 2), ("a.b", 2)])).unwrap();
        assert_eq!(o.percent, 50.0);
        assert!(occupancy(&PackageMap::new()).is_err());
    }
}

//! Evaluation measures for flat decompositions.

mod mojo;
mod packages;

use serde::Serialize;

pub use mojo::{
    max_mno, max_mno_exhaustive, mno, mno_brute_force, mojo, mojofm, mojofm_value, mojosim,
    mojosim_value, BFS_LIMIT, EXHAUSTIVE_MAX_MNO_LIMIT,
};
pub use packages::{auth_decomposition, occupancy, Occupancy, DEFAULT_AUTH_THRESHOLD, OCCUPANCY_LIMIT};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};

/// Non-extremity of the cluster distribution: the share of modules in
/// clusters whose size lies in `[5, max(20, N/5)]`.
pub fn ned(c: &Decomposition) -> f64 {
    let n = c.universe_size();
    if n == 0 {
        return 0.0;
    }
    let upper = 20f64.max(n as f64 / 5.0);
    let in_range: usize = c
        .cluster_sizes()
        .into_iter()
        .filter(|&s| s >= 5 && s as f64 <= upper)
        .sum();
    in_range as f64 / n as f64
}

/// Decompositions of consecutive versions of one system.
#[derive(Debug, Clone)]
pub struct VersionSeries {
    versions: Vec<(String, Decomposition)>,
}

impl VersionSeries {
    pub fn new(versions: Vec<(String, Decomposition)>) -> Result<Self> {
        let mut labels: Vec<&str> = versions.iter().map(|(l, _)| l.as_str()).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("version label `{}` is repeated", w[0])));
        }
        Ok(VersionSeries { versions })
    }

    pub fn len(&self) -> usize {
        self.versions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.versions.is_empty()
    }

    pub fn versions(&self) -> &[(String, Decomposition)] {
        &self.versions
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transition {
    pub from: String,
    pub to: String,
    /// Modules present in both versions; only these are compared.
    pub shared: usize,
    pub stability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub transitions: Vec<Transition>,
    pub average: f64,
}

/// MoJoSim between each pair of consecutive versions, both restricted to the
/// modules they share. The average runs over transitions only.
pub fn stability(series: &VersionSeries) -> Result<StabilityReport> {
    if series.len() < 2 {
        return Err(Error::domain(format!(
            "stability needs at least 2 versions, got {}",
            series.len()
        )));
    }
    let mut transitions = Vec::with_capacity(series.len() - 1);
    for pair in series.versions().windows(2) {
        let ((from, prev), (to, next)) = (&pair[0], &pair[1]);
        let shared: std::collections::BTreeSet<String> = prev
            .universe()
            .filter(|m| next.contains(m))
            .map(str::to_owned)
            .collect();
        if shared.is_empty() {
            return Err(Error::domain(format!(
                "versions `{from}` and `{to}` share no modules"
            )));
        }
        let value = mojosim(&prev.restricted_to(&shared), &next.restricted_to(&shared))?;
        transitions.push(Transition {
            from: from.clone(),
            to: to.clone(),
            shared: shared.len(),
            stability: value,
        });
    }
    let average = transitions.iter().map(|t| t.stability).sum::<f64>() / transitions.len() as f64;
    Ok(StabilityReport {
        transitions,
        average,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sized(sizes: &[usize]) -> Decomposition {
        let mut next = 0;
        let groups: Vec<Vec<String>> = sizes
            .iter()
            .map(|&s| {
                let g = (next..next + s).map(|i| format!("m{i:03}")).collect();
                next += s;
                g
            })
            .collect();
        Decomposition::from_groups(groups).unwrap()
    }

    #[test]
    fn ned_examples() {
        assert_eq!(ned(&sized(&[6, 6, 8])), 1.0);
        assert_eq!(ned(&sized(&[4, 16])), 0.8);
        assert_eq!(ned(&sized(&[1; 12])), 0.0);
        // N = 200: upper bound 40 admits a 40-module cluster, not 41
        assert_eq!(ned(&sized(&[40, 160])), 0.2);
        assert_eq!(ned(&sized(&[41, 159])), 0.0);
    }

    fn relabel(d: &Decomposition, moved: &str, to: &str) -> Decomposition {
        let target = d.cluster_of(to).unwrap().to_owned();
        Decomposition::from_labels(d.universe().map(|m| {
            let c = if m == moved { target.clone() } else { d.cluster_of(m).unwrap().to_owned() };
            (m, c)
        }))
        .unwrap()
    }

    #[test]
    fn stability_examples() {
        let v1 = sized(&[5, 5]);
        let same = VersionSeries::new(vec![("1".into(), v1.clone()), ("2".into(), v1.clone())]).unwrap();
        let r = stability(&same).unwrap();
        assert_eq!(r.transitions.len(), 1);
        assert_eq!(r.average, 100.0);

        let v2 = relabel(&v1, "m000", "m009");
        let v3 = v2.clone();
        let series = VersionSeries::new(vec![
            ("1".into(), v1),
            ("2".into(), v2),
            ("3".into(), v3),
        ])
        .unwrap();
        let r = stability(&series).unwrap();
        assert_eq!(r.transitions.len(), 2);
        assert_eq!(r.transitions[0].stability, 90.0);
        assert_eq!(r.transitions[1].stability, 100.0);
        assert_eq!(r.average, 95.0);
    }

    #[test]
    fn stability_restricts_to_shared_modules() {
        let a = Decomposition::from_groups(vec![vec!["x", "y"], vec!["z"]]).unwrap();
        let b = Decomposition::from_groups(vec![vec!["x", "y", "new"]]).unwrap();
        let r = stability(&VersionSeries::new(vec![("a".into(), a), ("b".into(), b)]).unwrap()).unwrap();
        assert_eq!(r.transitions[0].shared, 2);
        assert_eq!(r.transitions[0].stability, 100.0);
    }

    #[test]
    fn stability_errors() {
        let a = Decomposition::from_groups(vec![vec!["x"]]).unwrap();
        let b = Decomposition::from_groups(vec![vec!["y"]]).unwrap();
        let one = VersionSeries::new(vec![("a".into(), a.clone())]).unwrap();
        assert!(stability(&one).is_err());
        let disjoint = VersionSeries::new(vec![("a".into(), a.clone()), ("b".into(), b)]).unwrap();
        let err = stability(&disjoint).unwrap_err();
        assert!(err.to_string().contains("`a` and `b`"));
        assert!(VersionSeries::new(vec![("a".into(), a.clone()), ("a".into(), a)]).is_err());
    }
}

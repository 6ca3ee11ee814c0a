//! Move-and-join distance between flat decompositions.
//!
//! `mno(C, A)` is the least number of *move* (one module to another or a new
//! cluster) and *join* (two clusters into one) operations turning `C` into
//! `A`. It is computed by tagging: every cluster of `C` keeps the modules of
//! one `A` cluster and moves the rest, and clusters sharing a tag are joined.
//! Keeping the largest overlap is always optimal, so
//!
//! ```text
//! mno(C, A) = (N − Σ_i max_j |C_i ∩ A_j|) + (|C| − g)
//! ```
//!
//! where `g` is a maximum matching between `C` clusters and the `A` clusters
//! attaining their maximal overlap.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::partitions::{block_count, canonical_labels, SetPartitions};

pub const BFS_LIMIT: usize = 8;
pub const EXHAUSTIVE_MAX_MNO_LIMIT: usize = 10;

fn check_universe(c: &Decomposition, a: &Decomposition) -> Result<()> {
    if c.same_universe(a) {
        Ok(())
    } else {
        let shared = c.universe().filter(|m| a.contains(m)).count();
        Err(Error::UniverseMismatch {
            left: c.universe_size(),
            right: a.universe_size(),
            shared,
        })
    }
}

/// Label vectors of both decompositions over their shared, canonical universe.
fn aligned_labels(c: &Decomposition, a: &Decomposition) -> Result<(Vec<usize>, Vec<usize>)> {
    check_universe(c, a)?;
    let universe: Vec<&str> = c.universe().collect();
    Ok((c.labels_for(&universe), a.labels_for(&universe)))
}

/// Kuhn's augmenting-path maximum bipartite matching.
fn max_matching(adjacency: &[Vec<usize>], right_size: usize) -> usize {
    fn augment(
        u: usize,
        adjacency: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adjacency[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adjacency, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut owner = vec![None; right_size];
    let mut seen = vec![false; right_size];
    let mut matched = 0;
    for u in 0..adjacency.len() {
        seen.iter_mut().for_each(|s| *s = false);
        if augment(u, adjacency, &mut seen, &mut owner) {
            matched += 1;
        }
    }
    matched
}

pub(crate) fn mno_labels(c: &[usize], a: &[usize]) -> usize {
    let n = c.len();
    let kc = c.iter().max().map_or(0, |m| m + 1);
    let ka = a.iter().max().map_or(0, |m| m + 1);
    let mut overlap: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); kc];
    for (&ci, &ai) in c.iter().zip(a) {
        *overlap[ci].entry(ai).or_default() += 1;
    }
    let mut kept = 0;
    let mut adjacency = Vec::with_capacity(kc);
    let mut clusters = 0;
    for row in &overlap {
        let Some(&best) = row.values().max() else {
            continue;
        };
        clusters += 1;
        kept += best;
        adjacency.push(
            row.iter()
                .filter(|(_, &v)| v == best)
                .map(|(&j, _)| j)
                .collect::<Vec<_>>(),
        );
    }
    let groups = max_matching(&adjacency, ka);
    (n - kept) + (clusters - groups)
}

/// Minimum number of move and join operations turning `c` into `a`.
pub fn mno(c: &Decomposition, a: &Decomposition) -> Result<usize> {
    let (lc, la) = aligned_labels(c, a)?;
    Ok(mno_labels(&lc, &la))
}

/// `min(mno(c, a), mno(a, c))`.
pub fn mojo(c: &Decomposition, a: &Decomposition) -> Result<usize> {
    let (lc, la) = aligned_labels(c, a)?;
    Ok(mno_labels(&lc, &la).min(mno_labels(&la, &lc)))
}

/// `(1 − MoJo/N) × 100`.
pub fn mojosim(c: &Decomposition, a: &Decomposition) -> Result<f64> {
    let distance = mojo(c, a)?;
    let n = c.universe_size();
    if n == 0 {
        return Err(Error::domain("MoJoSim of an empty universe"));
    }
    Ok(mojosim_value(distance, n))
}

pub fn mojosim_value(mojo: usize, n: usize) -> f64 {
    (1.0 - mojo as f64 / n as f64) * 100.0
}

pub fn mojofm_value(mno: usize, max_mno: usize) -> f64 {
    (1.0 - mno as f64 / max_mno as f64) * 100.0
}

/// Largest `mno(X, a)` over all decompositions `X` of `a`'s universe.
///
/// With cluster sizes sorted in decreasing order `s_1 ≥ s_2 ≥ ...`, the value
/// is `N − g` where `g` is the largest `k` such that `s_i ≥ k − i + 1` for all
/// `i ≤ k`. Checked against [`max_mno_exhaustive`].
pub fn max_mno(a: &Decomposition) -> usize {
    let mut sizes = a.cluster_sizes();
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    max_mno_from_sizes(&sizes)
}

fn max_mno_from_sizes(sorted_desc: &[usize]) -> usize {
    let n: usize = sorted_desc.iter().sum();
    let mut floor = usize::MAX;
    let mut staircase = 0;
    for (i, &s) in sorted_desc.iter().enumerate() {
        floor = floor.min(s + i);
        if floor > i {
            staircase = i + 1;
        }
    }
    n - staircase
}

/// Largest `mno(X, a)` by enumerating every partition `X`. Oracle for
/// [`max_mno`]; limited to small universes.
pub fn max_mno_exhaustive(a: &Decomposition) -> Result<usize> {
    let n = a.universe_size();
    if n > EXHAUSTIVE_MAX_MNO_LIMIT {
        return Err(Error::TooLarge {
            what: "exhaustive max_mno",
            limit: EXHAUSTIVE_MAX_MNO_LIMIT,
            actual: n,
        });
    }
    let universe: Vec<&str> = a.universe().collect();
    let la = a.labels_for(&universe);
    Ok(SetPartitions::new(n)
        .map(|x| mno_labels(&x, &la))
        .max()
        .unwrap_or(0))
}

/// `(1 − mno(c, a) / max_mno(a)) × 100`. Not symmetric.
pub fn mojofm(c: &Decomposition, a: &Decomposition) -> Result<f64> {
    let distance = mno(c, a)?;
    let worst = max_mno(a);
    if worst == 0 {
        return Err(Error::domain(
            "MoJoFM is undefined when the reference admits no operation (N_maxops = 0)",
        ));
    }
    Ok(mojofm_value(distance, worst))
}

/// Exact `mno` by breadth-first search over decomposition states under single
/// move and join operations. Oracle for [`mno`].
pub fn mno_brute_force(c: &Decomposition, a: &Decomposition) -> Result<usize> {
    let (lc, la) = aligned_labels(c, a)?;
    let n = lc.len();
    if n > BFS_LIMIT {
        return Err(Error::TooLarge {
            what: "breadth-first mno",
            limit: BFS_LIMIT,
            actual: n,
        });
    }
    let start = canonical_labels(&lc);
    let goal = canonical_labels(&la);
    let mut dist: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        let d = dist[&state];
        if state == goal {
            return Ok(d);
        }
        let k = block_count(&state);
        let mut next_states = Vec::new();
        // moves: element x to another existing block or a fresh block
        for x in 0..n {
            for target in 0..=k {
                if target == state[x] {
                    continue;
                }
                let mut s = state.clone();
                s[x] = target;
                next_states.push(canonical_labels(&s));
            }
        }
        // joins
        for p in 0..k {
            for q in p + 1..k {
                let s: Vec<usize> = state.iter().map(|&l| if l == q { p } else { l }).collect();
                next_states.push(canonical_labels(&s));
            }
        }
        for s in next_states {
            if !dist.contains_key(&s) {
                dist.insert(s.clone(), d + 1);
                queue.push_back(s);
            }
        }
    }
    unreachable!("every partition is reachable by moves")
}

//! Exhaustive set-partition enumeration.
//!
//! Partitions of `{0, .., n-1}` are produced as restricted growth strings:
//! `labels[0] == 0` and `labels[i] <= 1 + max(labels[..i])`. Enumeration is
//! in lexicographic order of the strings, so the first partition is the
//! single block and the last is all singletons.

/// Iterator over all set partitions of an `n`-element set.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    // running maximum of labels[..=i]
    maxima: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            labels: vec![0; n],
            maxima: vec![0; n],
            started: false,
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.labels.is_empty() {
                self.done = true;
            }
            return Some(self.labels.clone());
        }
        let n = self.labels.len();
        // rightmost position that can still be incremented
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.labels[i] <= self.maxima[i - 1] {
                self.labels[i] += 1;
                self.maxima[i] = self.maxima[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxima[j] = self.maxima[i];
                }
                return Some(self.labels.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Number of blocks in a restricted growth string.
pub fn block_count(labels: &[usize]) -> usize {
    labels.iter().max().map_or(0, |m| m + 1)
}

/// Relabels arbitrary cluster labels into restricted growth form.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

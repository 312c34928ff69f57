use std::collections::BTreeSet;

use serde::Serialize;

use super::Package;
use crate::error::{QlabError, Result};
use crate::suffix_tree::SuffixTree;

/// Lengths `lo..=hi` on the edge entering `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeInterval {
    pub node: usize,
    pub lo: usize,
    pub hi: usize,
}

/// Substrings of `T` as disjoint length intervals on suffix-tree edges,
/// sorted by `(node, lo)`. Every substring has one locus, so the
/// representation has no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPackageSet {
    fingerprint: u64,
    entries: Vec<EdgeInterval>,
}

impl CanonicalPackageSet {
    pub fn empty(tree: &SuffixTree) -> Self {
        CanonicalPackageSet {
            fingerprint: tree.fingerprint(),
            entries: Vec::new(),
        }
    }

    /// Normalizes arbitrary intervals: clips them to their edges, sorts,
    /// and merges overlapping or adjacent ones.
    pub fn from_intervals(tree: &SuffixTree, mut raw: Vec<EdgeInterval>) -> Self {
        raw.retain_mut(|e| {
            e.lo = e.lo.max(tree.parent_depth(e.node) + 1);
            e.hi = e.hi.min(tree.depth(e.node));
            e.lo <= e.hi
        });
        raw.sort_unstable();
        let mut entries: Vec<EdgeInterval> = Vec::with_capacity(raw.len());
        for e in raw {
            match entries.last_mut() {
                Some(last) if last.node == e.node && e.lo <= last.hi + 1 => {
                    last.hi = last.hi.max(e.hi);
                }
                _ => entries.push(e),
            }
        }
        CanonicalPackageSet {
            fingerprint: tree.fingerprint(),
            entries,
        }
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn entries(&self) -> &[EdgeInterval] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct substrings represented.
    pub fn substring_count(&self) -> usize {
        self.entries.iter().map(|e| e.hi - e.lo + 1).sum()
    }

    pub fn shortest_len(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.lo).min()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.fingerprint != other.fingerprint {
            return Err(QlabError::CanonicalMismatch);
        }
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let (x, y) = (a[i], b[j]);
            if x.node != y.node {
                if x.node < y.node {
                    i += 1;
                } else {
                    j += 1;
                }
                continue;
            }
            let lo = x.lo.max(y.lo);
            let hi = x.hi.min(y.hi);
            if lo <= hi {
                out.push(EdgeInterval {
                    node: x.node,
                    lo,
                    hi,
                });
            }
            if x.hi < y.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(CanonicalPackageSet {
            fingerprint: self.fingerprint,
            entries: out,
        })
    }

    /// One package per interval, anchored at the edge's smallest leaf.
    pub fn packages(&self, tree: &SuffixTree) -> Vec<Package> {
        self.entries
            .iter()
            .map(|e| {
                let i = tree.min_leaf(e.node);
                Package::new(i, i + e.lo - 1, i + e.hi - 1)
            })
            .collect()
    }

    /// `(first occurrence, length)` of every represented substring.
    pub fn substrings(&self, tree: &SuffixTree, limit: usize) -> Result<BTreeSet<(usize, usize)>> {
        let width = self.substring_count();
        if width > limit {
            return Err(QlabError::ExpansionBudget { width, limit });
        }
        let mut out = BTreeSet::new();
        for e in &self.entries {
            let i = tree.min_leaf(e.node);
            out.extend((e.lo..=e.hi).map(|l| (i, l)));
        }
        Ok(out)
    }
}

//! Seeds: the substrings of `T` that cover some superstring of `T`.
//!
//! Results are families of substrings packed as [`Package`]s. The suffix-tree
//! algorithms return a [`CanonicalPackageSet`]; [`seeds_imp`] returns plain
//! packages, which [`expand`] turns into explicit substrings for comparison.

mod canonical;
mod imp;
mod kkrrw_s;
mod linear;
mod threshold;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{QlabError, Result};
use crate::suffix_tree::SuffixTree;
use crate::text::Text;

pub use canonical::{CanonicalPackageSet, EdgeInterval};
pub use imp::{seeds_imp, seeds_imp_with, ImpStats};
pub use kkrrw_s::{
    left_candidates, quasiseeds_nlogn, right_candidates, seeds_kkrrw_s, suffix_tree_maxgaps,
};
pub use linear::{compute_x, seeds_kkrrw_linear, BlockSummary, GapLemmaParams, LinearStats};

/// The substrings `T[i, j1], T[i, j1 + 1], ..., T[i, j2]` (1-based). A
/// reversed package denotes the same on the reversed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Package {
    pub i: usize,
    pub j1: usize,
    pub j2: usize,
    pub reversed: bool,
}

impl Package {
    pub fn new(i: usize, j1: usize, j2: usize) -> Self {
        debug_assert!(i <= j1 && j1 <= j2);
        Package {
            i,
            j1,
            j2,
            reversed: false,
        }
    }

    pub fn new_reversed(i: usize, j1: usize, j2: usize) -> Self {
        Package {
            reversed: true,
            ..Package::new(i, j1, j2)
        }
    }

    pub fn width(&self) -> usize {
        self.j2 - self.j1 + 1
    }

    pub fn min_len(&self) -> usize {
        self.j1 - self.i + 1
    }

    pub fn max_len(&self) -> usize {
        self.j2 - self.i + 1
    }
}

/// Default cap on the number of substrings [`expand`] materializes.
pub const EXPAND_LIMIT: usize = 1 << 22;

/// Explicit `(first occurrence, length)` set of the substrings in `pkgs`.
pub fn expand(t: &Text, pkgs: &[Package], limit: usize) -> Result<BTreeSet<(usize, usize)>> {
    let n = t.len();
    let width: usize = pkgs.iter().map(Package::width).sum();
    if width > limit {
        return Err(QlabError::ExpansionBudget { width, limit });
    }
    let rev = pkgs.iter().any(|p| p.reversed).then(|| t.reversed());
    let mut out = BTreeSet::new();
    for p in pkgs {
        if p.i == 0 || p.j2 > n || p.i > p.j1 || p.j1 > p.j2 {
            return Err(QlabError::InvalidArgument(format!(
                "package ({}, {}, {}) outside 1..={n}",
                p.i, p.j1, p.j2
            )));
        }
        let (lo, hi) = (p.min_len(), p.max_len());
        if !p.reversed {
            // lcp of every position with i; the first p reaching lcp >= l is
            // the first occurrence of the length-l prefix of T[i..].
            let lcp = lcp_with(t, p.i - 1);
            let mut reach = 0;
            for (q, &l) in lcp.iter().enumerate() {
                if l > reach {
                    for len in (reach + 1).max(lo)..=l.min(hi) {
                        out.insert((q + 1, len));
                    }
                    reach = l;
                    if reach >= hi {
                        break;
                    }
                }
            }
        } else {
            // On T^R the strings start at i; in T they end at e = n - i + 1.
            // The first occurrence in T has the smallest end, i.e. the largest
            // start on T^R with a long enough common prefix.
            let r = rev.as_ref().expect("reversed text");
            let lcp = lcp_with(r, p.i - 1);
            let mut reach = 0;
            for q in (0..n).rev() {
                let l = lcp[q];
                if l > reach {
                    let end = n - q;
                    for len in (reach + 1).max(lo)..=l.min(hi) {
                        out.insert((end + 1 - len, len));
                    }
                    reach = l;
                    if reach >= hi {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Longest common prefix of `t[q..]` and `t[i..]` for every `q`.
fn lcp_with(t: &[u8], i: usize) -> Vec<usize> {
    let n = t.len();
    let mut s: Vec<u16> = Vec::with_capacity(2 * n + 1);
    s.extend(t[i..].iter().map(|&c| c as u16));
    s.push(256);
    s.extend(t.iter().map(|&c| c as u16));
    let z = z_generic(&s);
    let off = n - i + 1;
    (0..n).map(|q| z[off + q]).collect()
}

fn z_generic(s: &[u16]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while i + k < n && s[k] == s[i + k] {
            k += 1;
        }
        z[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedAlgorithm {
    Imp,
    KkrrwS,
    Kkrrw,
}

impl SeedAlgorithm {
    pub const ALL: [SeedAlgorithm; 3] = [
        SeedAlgorithm::Imp,
        SeedAlgorithm::KkrrwS,
        SeedAlgorithm::Kkrrw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeedAlgorithm::Imp => "imp",
            SeedAlgorithm::KkrrwS => "kkrrw-s",
            SeedAlgorithm::Kkrrw => "kkrrw",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    pub fn run(self, t: &Text) -> SeedReport {
        let packages = match self {
            SeedAlgorithm::Imp => seeds_imp(t).0,
            SeedAlgorithm::KkrrwS => {
                let tree = SuffixTree::build(t);
                seeds_kkrrw_s(&tree).packages(&tree)
            }
            SeedAlgorithm::Kkrrw => {
                let tree = SuffixTree::build(t);
                seeds_kkrrw_linear(&tree).0.packages(&tree)
            }
        };
        SeedReport::new(packages)
    }
}

/// Seed packages with summary numbers that do not need expansion. All three
/// algorithms produce duplicate-free packages, so the counts agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedReport {
    pub count: usize,
    pub shortest_len: Option<usize>,
    pub packages: Vec<Package>,
}

impl SeedReport {
    pub fn new(packages: Vec<Package>) -> Self {
        SeedReport {
            count: packages.iter().map(Package::width).sum(),
            shortest_len: packages.iter().map(Package::min_len).min(),
            packages,
        }
    }
}

/// Test helper shared by the seed submodules.
#[cfg(test)]
pub(crate) fn tree_of(s: &[u8]) -> SuffixTree {
    SuffixTree::build(&Text::new(s.to_vec()).unwrap())
}

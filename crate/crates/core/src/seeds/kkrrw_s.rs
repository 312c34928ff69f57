//! Seeds as quasiseeds that are both left and right candidates, each
//! family computed on the suffix tree.

use super::canonical::{CanonicalPackageSet, EdgeInterval};
use super::threshold::ThresholdIndex;
use crate::jst::{JstForest, MaxgapAgg};
use crate::suffix_tree::{SuffixTree, ROOT};
use crate::text::{borders, GapValue};

/// Maxgap of the occurrence set of every node, by joining the children's
/// trees bottom-up.
pub fn suffix_tree_maxgaps(tree: &SuffixTree) -> Vec<GapValue> {
    let n = tree.n();
    let m = tree.node_count();
    let mut forest = JstForest::<MaxgapAgg>::new(n, ());
    let mut acc: Vec<_> = (0..m).map(|_| Some(forest.empty())).collect();
    let mut out = vec![GapValue::Unbounded; m];
    for v in (0..m).rev() {
        let mut t = acc[v].take().expect("visited once");
        if let Some(s) = tree.suffix_start(v).filter(|&s| s <= n) {
            let leaf = forest.singleton(s).expect("position in range");
            t = forest.join(t, leaf).expect("same forest");
        }
        out[v] = forest.root(&t).map_or(GapValue::Unbounded, |a| a.maxgap());
        if v == ROOT {
            forest.release(t);
        } else {
            let p = tree.parent(v);
            let pt = acc[p].take().expect("parent after child");
            acc[p] = Some(forest.join(pt, t).expect("same forest"));
        }
    }
    out
}

/// Substrings whose occurrences are at most their length apart.
pub fn quasiseeds_nlogn(tree: &SuffixTree) -> CanonicalPackageSet {
    let gaps = suffix_tree_maxgaps(tree);
    let raw = (1..tree.node_count())
        .filter(|&v| tree.has_locus(v))
        .map(|v| EdgeInterval {
            node: v,
            lo: (tree.parent_depth(v) + 1).max(gaps[v].finite().unwrap_or(1)),
            hi: tree.depth(v),
        })
        .collect();
    CanonicalPackageSet::from_intervals(tree, raw)
}

/// Substrings that are a suffix and a seed of some prefix of `T`. With `p`
/// the first occurrence of `S`, this holds iff `B[p + |S| - 1] >= p - 1`.
pub fn left_candidates(tree: &SuffixTree) -> CanonicalPackageSet {
    let n = tree.n();
    let b = borders(tree.text());
    let index = ThresholdIndex::new(&b);
    let mut raw = Vec::new();
    let mut chain = Vec::new();
    let mut runs = Vec::new();
    for p in 1..=n {
        // Nodes whose first occurrence is p form a path up from the leaf of p.
        chain.clear();
        let mut v = tree.leaf_of_suffix(p);
        while v != ROOT && tree.min_leaf(v) == p {
            chain.push(v);
            v = tree.parent(v);
        }
        let Some(&top) = chain.last() else { continue };
        if p == 1 {
            raw.extend(chain.iter().map(|&v| EdgeInterval {
                node: v,
                lo: tree.parent_depth(v) + 1,
                hi: tree.depth(v),
            }));
            continue;
        }
        let shallow = tree.parent_depth(top);
        if p + shallow > n {
            continue;
        }
        runs.clear();
        index.runs_at_least(p + shallow - 1, n - 1, p - 1, &mut runs);
        // Chain from the top down has increasing depth; merge with the runs.
        let mut k = chain.len();
        for &(a, e) in &runs {
            let (lo, hi) = (a + 2 - p, e + 2 - p);
            while k > 0 {
                let w = chain[k - 1];
                if tree.depth(w) < lo {
                    k -= 1;
                    continue;
                }
                let (elo, ehi) = (tree.parent_depth(w) + 1, tree.depth(w));
                if elo > hi {
                    break;
                }
                raw.push(EdgeInterval {
                    node: w,
                    lo: lo.max(elo),
                    hi: hi.min(ehi),
                });
                if ehi > hi {
                    break;
                }
                k -= 1;
            }
        }
    }
    CanonicalPackageSet::from_intervals(tree, raw)
}

/// Substrings that are a prefix and a seed of some suffix of `T`. With `q`
/// the last occurrence, this holds iff `|S| >= n - q + 1 - Bsuf[q]`, where
/// `Bsuf[q]` is the longest border of `T[q, n]`.
pub fn right_candidates(tree: &SuffixTree) -> CanonicalPackageSet {
    let n = tree.n();
    let rev = tree.text().reversed();
    let br = borders(&rev);
    let raw = (1..tree.node_count())
        .filter(|&v| tree.has_locus(v))
        .map(|v| {
            let q = tree.max_leaf(v);
            let bsuf = br[n - q];
            EdgeInterval {
                node: v,
                lo: (tree.parent_depth(v) + 1).max(n - q + 1 - bsuf),
                hi: tree.depth(v),
            }
        })
        .collect();
    CanonicalPackageSet::from_intervals(tree, raw)
}

/// All seeds in `O(n log n)` time.
pub fn seeds_kkrrw_s(tree: &SuffixTree) -> CanonicalPackageSet {
    let q = quasiseeds_nlogn(tree);
    let l = left_candidates(tree);
    let r = right_candidates(tree);
    q.intersect(&l)
        .and_then(|x| x.intersect(&r))
        .expect("sets built on one tree")
}

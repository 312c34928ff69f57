//! Suffix tree of `T$` and Crochemore's partitioning.
//!
//! Nodes are numbered in preorder with children sorted by their first symbol
//! (the terminator sorts last), so the subtree of `v` is the id range
//! `v..subtree_end(v)` and leaves appear in suffix-array order. Any loop over
//! ids in decreasing order visits children before parents.
//!
//! Depths never count the terminator. The suffix `$` alone and every suffix
//! that is a prefix of a longer one end in a leaf whose edge carries only the
//! terminator; such leaves have the same depth as their parent and represent
//! no substring of `T`.

mod partition;
mod ukkonen;

use std::hash::{Hash, Hasher};

use rustc_hash::FxHasher;

use crate::error::{QlabError, Result};
use crate::text::{OccList, Text};

pub use partition::{
    crochemore_partition, ListId, MaxgapRule, PartitionEvent, PartitionSink, PartitionState,
};

/// A point of the tree: the locus of the substring of length `depth` that
/// lies on the edge entering `node` (`depth(parent) < depth <= depth(node)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Locus {
    pub node: usize,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct SuffixTree {
    text: Text,
    fingerprint: u64,
    parent: Vec<usize>,
    depth: Vec<usize>,
    /// 0-based index into `T$` of the first symbol of the edge label.
    edge_start: Vec<usize>,
    /// 1-based suffix start for leaves (`n + 1` for the empty suffix), 0 for internal nodes.
    suffix: Vec<usize>,
    subtree_end: Vec<usize>,
    min_leaf: Vec<usize>,
    max_leaf: Vec<usize>,
    leaf_count: Vec<usize>,
    leaf_by_suffix: Vec<usize>,
    child_offsets: Vec<usize>,
    child_list: Vec<usize>,
}

pub const ROOT: usize = 0;

impl SuffixTree {
    pub fn build(text: &Text) -> SuffixTree {
        let n = text.len();
        let raw = ukkonen::build_raw(text);
        let raw_count = raw.start.len();

        // Group (parent, symbol, child) by parent, children sorted by symbol,
        // with two stable counting passes.
        let mut triples: Vec<(usize, u16, usize)> = raw
            .children
            .iter()
            .map(|(&k, &c)| ((k >> 9) as usize, (k & 0x1ff) as u16, c))
            .collect();
        let mut by_symbol = vec![0usize; 258];
        for &(_, s, _) in &triples {
            by_symbol[s as usize + 1] += 1;
        }
        for s in 1..258 {
            by_symbol[s] += by_symbol[s - 1];
        }
        let mut sorted = vec![(0usize, 0u16, 0usize); triples.len()];
        for &t in &triples {
            let slot = &mut by_symbol[t.1 as usize];
            sorted[*slot] = t;
            *slot += 1;
        }
        let mut raw_offsets = vec![0usize; raw_count + 1];
        for &(p, _, _) in &sorted {
            raw_offsets[p + 1] += 1;
        }
        for v in 1..=raw_count {
            raw_offsets[v] += raw_offsets[v - 1];
        }
        let mut fill = raw_offsets.clone();
        for &t in &sorted {
            triples[fill[t.0]] = t;
            fill[t.0] += 1;
        }
        let raw_child = |v: usize| {
            triples[raw_offsets[v]..raw_offsets[v + 1]]
                .iter()
                .map(|t| t.2)
        };

        // Preorder renumbering.
        let mut new_id = vec![usize::MAX; raw_count];
        let mut order = Vec::with_capacity(raw_count);
        let mut parent = vec![0usize; raw_count];
        let mut sdepth = vec![0usize; raw_count];
        let mut stack = vec![(0usize, 0usize, 0usize)];
        while let Some((v, p, pd)) = stack.pop() {
            let id = order.len();
            new_id[v] = id;
            order.push(v);
            parent[id] = p;
            let d = pd + (raw.end[v] - raw.start[v]);
            sdepth[id] = d;
            let kids: Vec<usize> = raw_child(v).collect();
            for &c in kids.iter().rev() {
                stack.push((c, id, d));
            }
        }

        let mut depth = vec![0usize; raw_count];
        let mut edge_start = vec![0usize; raw_count];
        let mut suffix = vec![0usize; raw_count];
        let mut child_offsets = vec![0usize; raw_count + 1];
        let mut child_list = Vec::with_capacity(raw_count.saturating_sub(1));
        for (id, &v) in order.iter().enumerate() {
            edge_start[id] = raw.start[v];
            let is_leaf = raw_offsets[v] == raw_offsets[v + 1];
            if is_leaf && id != ROOT {
                let s0 = raw.start[v] - sdepth[parent[id]];
                suffix[id] = s0 + 1;
                depth[id] = n - s0;
            } else {
                depth[id] = sdepth[id];
            }
            child_list.extend(raw_child(v).map(|c| new_id[c]));
            child_offsets[id + 1] = child_list.len();
        }

        let mut subtree_end: Vec<usize> = (1..=raw_count).collect();
        let mut min_leaf = vec![n + 1; raw_count];
        let mut max_leaf = vec![0usize; raw_count];
        let mut leaf_count = vec![0usize; raw_count];
        for v in (0..raw_count).rev() {
            if suffix[v] != 0 && suffix[v] <= n {
                min_leaf[v] = suffix[v];
                max_leaf[v] = suffix[v];
                leaf_count[v] = 1;
            }
            if v != ROOT {
                let p = parent[v];
                subtree_end[p] = subtree_end[p].max(subtree_end[v]);
                min_leaf[p] = min_leaf[p].min(min_leaf[v]);
                max_leaf[p] = max_leaf[p].max(max_leaf[v]);
                leaf_count[p] += leaf_count[v];
            }
        }

        let mut leaf_by_suffix = vec![usize::MAX; n + 2];
        for (v, &s) in suffix.iter().enumerate() {
            if s != 0 {
                leaf_by_suffix[s] = v;
            }
        }

        let mut hasher = FxHasher::default();
        text.as_bytes().hash(&mut hasher);
        raw_count.hash(&mut hasher);

        SuffixTree {
            text: text.clone(),
            fingerprint: hasher.finish(),
            parent,
            depth,
            edge_start,
            suffix,
            subtree_end,
            min_leaf,
            max_leaf,
            leaf_count,
            leaf_by_suffix,
            child_offsets,
            child_list,
        }
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    /// Identifies the tree (its text and shape) for package-set compatibility checks.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    /// String depth `|v|`, excluding the terminator.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// `|u|` for the edge `(u, v]` entering `v`.
    pub fn parent_depth(&self, v: usize) -> usize {
        if v == ROOT {
            0
        } else {
            self.depth[self.parent[v]]
        }
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.suffix[v] != 0
    }

    /// 1-based suffix start of a leaf; `n + 1` marks the empty suffix.
    pub fn suffix_start(&self, v: usize) -> Option<usize> {
        (self.suffix[v] != 0).then_some(self.suffix[v])
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_offsets[v]..self.child_offsets[v + 1]]
    }

    /// Exclusive end of the preorder range of the subtree of `v`.
    pub fn subtree_end(&self, v: usize) -> usize {
        self.subtree_end[v]
    }

    /// Smallest leaf suffix-start under `v` (the node's canonical `i_suf`);
    /// `n + 1` when the subtree holds only the empty suffix.
    pub fn min_leaf(&self, v: usize) -> usize {
        self.min_leaf[v]
    }

    /// Largest leaf suffix-start under `v`; 0 when there is none.
    pub fn max_leaf(&self, v: usize) -> usize {
        self.max_leaf[v]
    }

    /// Number of occurrences of the substrings on the edge entering `v`.
    pub fn leaf_count(&self, v: usize) -> usize {
        self.leaf_count[v]
    }

    /// Whether the edge entering `v` carries at least one symbol of `T`.
    pub fn has_locus(&self, v: usize) -> bool {
        v != ROOT && self.depth[v] > self.depth[self.parent[v]]
    }

    /// 0-based index into `T$` of the first symbol on the edge entering `v`.
    pub fn edge_start(&self, v: usize) -> usize {
        self.edge_start[v]
    }

    pub fn node_occ(&self, v: usize) -> Result<OccList> {
        if v == ROOT {
            return Err(QlabError::RootNode);
        }
        if v >= self.node_count() {
            return Err(QlabError::OutOfRange {
                what: "node",
                value: v,
                max: self.node_count() - 1,
            });
        }
        let n = self.n();
        let mut occ: Vec<usize> = (v..self.subtree_end[v])
            .map(|w| self.suffix[w])
            .filter(|&s| s != 0 && s <= n)
            .collect();
        occ.sort_unstable();
        Ok(OccList::from_sorted(occ))
    }

    /// Leaf suffix-starts of the subtree in preorder (lexicographic) order,
    /// excluding the empty suffix.
    pub fn leaves_under(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n();
        (v..self.subtree_end[v])
            .map(|w| self.suffix[w])
            .filter(move |&s| s != 0 && s <= n)
    }

    /// Locus of `pattern`, or `None` if it does not occur.
    pub fn locate(&self, pattern: &[u8]) -> Option<Locus> {
        if pattern.is_empty() {
            return None;
        }
        let text = self.text.as_bytes();
        let mut v = ROOT;
        let mut matched = 0;
        loop {
            let c = pattern[matched] as u16;
            let next = self
                .children(v)
                .iter()
                .copied()
                .find(|&w| ukkonen::symbol_at(text, self.edge_start[w]) == c)?;
            let label_len = self.depth[next] - self.depth[v];
            let start = self.edge_start[next];
            let take = label_len.min(pattern.len() - matched);
            if text.get(start..start + take)? != &pattern[matched..matched + take] {
                return None;
            }
            matched += take;
            if matched == pattern.len() {
                return Some(Locus {
                    node: next,
                    depth: matched,
                });
            }
            v = next;
        }
    }

    /// Locus of `T[start, start + len - 1]`, found by walking up from the leaf of `start`.
    pub fn locus_of(&self, start: usize, len: usize) -> Option<Locus> {
        if len == 0 || start == 0 || start + len - 1 > self.n() {
            return None;
        }
        let mut v = self.leaf_of_suffix(start);
        while self.parent_depth(v) >= len {
            v = self.parent[v];
        }
        Some(Locus {
            node: v,
            depth: len,
        })
    }

    /// Leaf of the 1-based suffix start (`n + 1` gives the empty suffix).
    pub fn leaf_of_suffix(&self, start: usize) -> usize {
        self.leaf_by_suffix[start]
    }
}

//! Linear-time seeds, split by length into long, medium and short groups.
//!
//! With `x` the largest integer such that fewer than `2n/3` length-`(4x-3)`
//! strings (counting the short prefixes) occur, no seed has a length in
//! `[8x, n/6]`. Long seeds (`> n/6`) use block summaries on the whole text,
//! medium ones (`x..8x`) are intersected over overlapping windows, and short
//! ones (`< x`) recurse on the pieces of the text covered by the first
//! occurrences of its length-`(2x-1)` substrings.

use serde::Serialize;

use super::canonical::{CanonicalPackageSet, EdgeInterval};
use super::kkrrw_s::{left_candidates, right_candidates};
use crate::suffix_tree::{SuffixTree, ROOT};
use crate::text::{GapValue, Text};

/// `beta[k]` (index 0 unused) is the number of distinct length-`k`
/// substrings plus `k - 1`, and `x` the largest value with
/// `3 * beta[4x - 3] < 2n` (0 if there is none).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapLemmaParams {
    pub x: usize,
    pub beta: Vec<usize>,
}

pub fn compute_x(tree: &SuffixTree) -> GapLemmaParams {
    let n = tree.n();
    let mut diff = vec![0isize; n + 2];
    for v in 1..tree.node_count() {
        if tree.has_locus(v) {
            diff[tree.parent_depth(v) + 1] += 1;
            diff[tree.depth(v) + 1] -= 1;
        }
    }
    let mut beta = vec![0usize; n + 1];
    let mut run = 0isize;
    for k in 1..=n {
        run += diff[k];
        beta[k] = run as usize + k - 1;
    }
    let mut x = 0;
    while 4 * (x + 1) - 3 <= n && 3 * beta[4 * (x + 1) - 3] < 2 * n {
        x += 1;
    }
    GapLemmaParams { x, beta }
}

/// Per node, the first and last occurrence inside each of `blocks` equal
/// blocks of positions. Gaps between blocks are exact; gaps inside a block
/// are below `block_len` and are not tracked.
#[derive(Clone, Debug)]
pub struct BlockSummary {
    blocks: usize,
    block_len: usize,
    first: Vec<u32>,
    last: Vec<u32>,
    count: Vec<u32>,
}

impl BlockSummary {
    pub fn build(tree: &SuffixTree, blocks: usize) -> Self {
        let n = tree.n();
        let m = tree.node_count();
        let block_len = n.div_ceil(blocks);
        let mut s = BlockSummary {
            blocks,
            block_len,
            first: vec![0; m * blocks],
            last: vec![0; m * blocks],
            count: vec![0; m],
        };
        for v in (0..m).rev() {
            if let Some(p) = tree.suffix_start(v).filter(|&p| p <= n) {
                let k = v * blocks + (p - 1) / block_len;
                s.first[k] = p as u32;
                s.last[k] = p as u32;
                s.count[v] += 1;
            }
            if v != ROOT {
                let u = tree.parent(v);
                s.count[u] += s.count[v];
                for b in 0..blocks {
                    let (cv, cu) = (v * blocks + b, u * blocks + b);
                    if s.first[cv] != 0 {
                        if s.first[cu] == 0 || s.first[cv] < s.first[cu] {
                            s.first[cu] = s.first[cv];
                        }
                        s.last[cu] = s.last[cu].max(s.last[cv]);
                    }
                }
            }
        }
        s
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn first(&self, v: usize, block: usize) -> Option<usize> {
        let f = self.first[v * self.blocks + block];
        (f != 0).then_some(f as usize)
    }

    pub fn last(&self, v: usize, block: usize) -> Option<usize> {
        let l = self.last[v * self.blocks + block];
        (l != 0).then_some(l as usize)
    }

    /// Largest gap between consecutive nonempty blocks; equals the true
    /// maxgap whenever that is at least `block_len`, otherwise a lower bound.
    pub fn maxgap(&self, v: usize) -> GapValue {
        if self.count[v] < 2 {
            return GapValue::Unbounded;
        }
        let mut gap = 0;
        let mut prev: Option<usize> = None;
        for b in 0..self.blocks {
            if let (Some(f), Some(l)) = (self.first(v, b), self.last(v, b)) {
                if let Some(p) = prev {
                    gap = gap.max(f - p);
                }
                prev = Some(l);
            }
        }
        GapValue::Finite(gap)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinearStats {
    /// `x` of the top-level text.
    pub x: usize,
    /// Number of recursive calls, the top level included.
    pub calls: usize,
    /// Deepest recursion level reached (0 when no recursion happened).
    pub max_depth: usize,
    /// Total length of the texts recursed on, per level below the top.
    pub level_lengths: Vec<usize>,
    /// Medium-seed windows examined.
    pub windows: usize,
}

/// Window length for medium seeds, in multiples of `x`. Every length-`(2l-1)`
/// substring with `l < 8x` must fit in one window; windows start every `8x`.
const WINDOW_FACTOR: usize = 24;
const WINDOW_STEP: usize = 8;
const LONG_BLOCKS: usize = 6;

/// All seeds in linear time, on the tree of the text.
pub fn seeds_kkrrw_linear(tree: &SuffixTree) -> (CanonicalPackageSet, LinearStats) {
    seeds_linear_windows(tree, WINDOW_FACTOR)
}

/// Same, with medium windows of length `factor * x`.
pub(crate) fn seeds_linear_windows(
    tree: &SuffixTree,
    factor: usize,
) -> (CanonicalPackageSet, LinearStats) {
    let mut stats = LinearStats::default();
    let set = seeds_level(tree, tree.n(), 0, factor, &mut stats);
    (set, stats)
}

/// Seeds of length at most `max_len`.
fn seeds_level(
    tree: &SuffixTree,
    max_len: usize,
    level: usize,
    factor: usize,
    stats: &mut LinearStats,
) -> CanonicalPackageSet {
    stats.calls += 1;
    stats.max_depth = stats.max_depth.max(level);
    let n = tree.n();
    let params = compute_x(tree);
    let x = params.x;
    if level == 0 {
        stats.x = x;
    }
    let left = left_candidates(tree);
    let right = right_candidates(tree);

    let long_lo = n / 6 + 1;
    let mut parts = Vec::new();
    if long_lo <= max_len {
        let q = quasiseeds_blocks(tree, LONG_BLOCKS, long_lo, max_len);
        parts.extend(intersect3(&q, &left, &right).entries().iter().copied());
    }

    let medium_hi = (8 * x).saturating_sub(1).min(n / 6).min(max_len);
    if x >= 1 && x <= medium_hi {
        parts.extend(medium_seeds(tree, x, medium_hi, factor, stats));
    }

    let short_hi = x.saturating_sub(1).min(max_len);
    if short_hi >= 1 {
        parts.extend(short_seeds(tree, x, short_hi, level, factor, stats));
    }
    CanonicalPackageSet::from_intervals(tree, parts)
}

fn intersect3(
    a: &CanonicalPackageSet,
    b: &CanonicalPackageSet,
    c: &CanonicalPackageSet,
) -> CanonicalPackageSet {
    a.intersect(b)
        .and_then(|ab| ab.intersect(c))
        .expect("sets built on one tree")
}

/// Quasiseeds with lengths in `lo..=hi`, where `lo` is at least the block length.
fn quasiseeds_blocks(
    tree: &SuffixTree,
    blocks: usize,
    lo: usize,
    hi: usize,
) -> CanonicalPackageSet {
    let summary = BlockSummary::build(tree, blocks);
    debug_assert!(summary.block_len() <= lo + 1);
    let raw = (1..tree.node_count())
        .filter(|&v| tree.has_locus(v))
        .map(|v| EdgeInterval {
            node: v,
            lo: lo
                .max(tree.parent_depth(v) + 1)
                .max(summary.maxgap(v).finite().unwrap_or(0)),
            hi: hi.min(tree.depth(v)),
        })
        .collect();
    CanonicalPackageSet::from_intervals(tree, raw)
}

/// Seeds with lengths in `x..=hi`: the strings that are seeds of every window
/// long enough to constrain their length.
fn medium_seeds(
    tree: &SuffixTree,
    x: usize,
    hi: usize,
    factor: usize,
    stats: &mut LinearStats,
) -> Vec<EdgeInterval> {
    let n = tree.n();
    let t = tree.text().as_bytes();
    let (win, step) = (factor * x, WINDOW_STEP * x);
    let mut queries = Vec::new();
    let mut windows = 0;
    let mut tail_half = usize::MAX;
    let mut start = 0;
    loop {
        let end = (start + win).min(n);
        let len = end - start;
        // A window shorter than 2l - 1 says nothing about length l.
        let whi = hi.min(len.div_ceil(2));
        windows += 1;
        if end == n && len < win {
            tail_half = len.div_ceil(2);
        }
        if whi >= x {
            let wt = Text::new(t[start..end].to_vec()).expect("nonempty window");
            let wtree = SuffixTree::build(&wt);
            let q = quasiseeds_blocks(&wtree, factor, x, whi);
            let s = intersect3(&q, &left_candidates(&wtree), &right_candidates(&wtree));
            push_queries(&wtree, &s, start, &mut queries);
        }
        if end == n {
            break;
        }
        start += step;
    }
    stats.windows += windows;
    let mapped = map_into(tree, queries);
    let full = if tail_half == usize::MAX {
        windows
    } else {
        windows - 1
    };
    // Lengths up to tail_half must appear in every window, longer ones in
    // every full window.
    select_by_count(
        mapped,
        |l| if l <= tail_half { windows } else { full },
        x,
        hi,
    )
}

/// Seeds shorter than `x`: a string that short is a seed iff it is a seed of
/// every length-`(2x-1)` substring, and these all lie in the marked pieces.
fn short_seeds(
    tree: &SuffixTree,
    x: usize,
    hi: usize,
    level: usize,
    factor: usize,
    stats: &mut LinearStats,
) -> Vec<EdgeInterval> {
    let n = tree.n();
    let span = 2 * x - 1;
    let mut diff = vec![0isize; n + 2];
    for v in 1..tree.node_count() {
        if tree.has_locus(v) && tree.parent_depth(v) < span && span <= tree.depth(v) {
            let p = tree.min_leaf(v);
            diff[p] += 1;
            diff[p + span] -= 1;
        }
    }
    let mut pieces = Vec::new();
    let mut run = 0isize;
    let mut open = None;
    for p in 1..=n + 1 {
        run += diff[p];
        match (run > 0 && p <= n, open) {
            (true, None) => open = Some(p),
            (false, Some(a)) => {
                pieces.push((a, p - 1));
                open = None;
            }
            _ => {}
        }
    }
    if stats.level_lengths.len() <= level {
        stats.level_lengths.resize(level + 1, 0);
    }
    stats.level_lengths[level] += pieces.iter().map(|&(a, b)| b - a + 1).sum::<usize>();

    let t = tree.text().as_bytes();
    let mut queries = Vec::new();
    for &(a, b) in &pieces {
        let pt = Text::new(t[a - 1..b].to_vec()).expect("nonempty piece");
        let ptree = SuffixTree::build(&pt);
        let s = seeds_level(&ptree, hi, level + 1, factor, stats);
        push_queries(&ptree, &s, a - 1, &mut queries);
    }
    let mapped = map_into(tree, queries);
    let need = pieces.len();
    select_by_count(mapped, |_| need, 1, hi)
}

/// Query `(start in the parent text, lo, hi)` for every entry of `set`,
/// which lives on the tree of the substring starting after `offset`.
fn push_queries(
    sub: &SuffixTree,
    set: &CanonicalPackageSet,
    offset: usize,
    out: &mut Vec<(usize, usize, usize)>,
) {
    out.extend(
        set.entries()
            .iter()
            .map(|e| (offset + sub.min_leaf(e.node), e.lo, e.hi)),
    );
}

/// Turns `(start, lo, hi)` substring ranges into edge intervals of `tree`,
/// answering all ancestor-by-depth queries in one preorder pass.
fn map_into(tree: &SuffixTree, mut queries: Vec<(usize, usize, usize)>) -> Vec<EdgeInterval> {
    let mut keyed: Vec<(usize, usize, usize)> = queries
        .drain(..)
        .map(|(s, lo, hi)| (tree.leaf_of_suffix(s), lo, hi))
        .collect();
    keyed.sort_unstable();
    let mut out = Vec::with_capacity(keyed.len());
    let mut stack: Vec<usize> = Vec::new();
    let mut qi = 0;
    for v in 0..tree.node_count() {
        if qi == keyed.len() {
            break;
        }
        while stack.last().is_some_and(|&u| tree.subtree_end(u) <= v) {
            stack.pop();
        }
        stack.push(v);
        while qi < keyed.len() && keyed[qi].0 == v {
            let (_, lo, hi) = keyed[qi];
            qi += 1;
            let mut k = stack.partition_point(|&w| tree.depth(w) < lo);
            while k < stack.len() {
                let w = stack[k];
                let (elo, ehi) = (tree.parent_depth(w) + 1, tree.depth(w));
                if elo > hi {
                    break;
                }
                if lo.max(elo) <= hi.min(ehi) {
                    out.push(EdgeInterval {
                        node: w,
                        lo: lo.max(elo),
                        hi: hi.min(ehi),
                    });
                }
                k += 1;
            }
        }
    }
    out
}

/// Depths on each edge covered by at least `need(l)` of the given intervals,
/// restricted to `lo..=hi`. Intervals coming from one source must be disjoint.
fn select_by_count(
    mut intervals: Vec<EdgeInterval>,
    need: impl Fn(usize) -> usize,
    lo: usize,
    hi: usize,
) -> Vec<EdgeInterval> {
    let mut events: Vec<(usize, usize, isize)> = Vec::with_capacity(2 * intervals.len());
    for e in intervals.drain(..) {
        events.push((e.node, e.lo, 1));
        events.push((e.node, e.hi + 1, -1));
    }
    events.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < events.len() {
        let node = events[i].0;
        let mut count = 0isize;
        while i < events.len() && events[i].0 == node {
            let at = events[i].1;
            while i < events.len() && events[i].0 == node && events[i].1 == at {
                count += events[i].2;
                i += 1;
            }
            let next = if i < events.len() && events[i].0 == node {
                events[i].1
            } else {
                at
            };
            if count > 0 && next > at {
                let (a, b) = (at.max(lo), (next - 1).min(hi));
                // need() steps down at most once, so split where it changes.
                let mut l = a;
                while l <= b {
                    let k = need(l);
                    let mut r = l;
                    while r < b && need(r + 1) == k {
                        r += 1;
                    }
                    if count as usize >= k {
                        out.push(EdgeInterval { node, lo: l, hi: r });
                    }
                    l = r + 1;
                }
            }
        }
    }
    out
}

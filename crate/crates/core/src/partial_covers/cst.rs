use crate::jst::ChangeListDsu;
use crate::suffix_tree::{SuffixTree, ROOT};
use crate::text::Text;

/// A point of the suffix tree at which `cv` and `delta` are recorded. Along
/// the lengths `top + 1..=depth` of its segment, the substring of length `l`
/// covers `cv - (depth - l) * delta` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CstNode {
    /// Suffix-tree node whose incoming edge holds this point.
    pub st_node: usize,
    pub depth: usize,
    /// Depth of the next recorded point above (exclusive end of the segment).
    pub top: usize,
    /// Positions covered by the occurrences of the substring.
    pub cv: usize,
    /// Number of maximal covered fragments.
    pub delta: usize,
}

/// Suffix tree with every point where `delta` changes made explicit.
///
/// Along an edge the occurrence set is fixed and the covered count is
/// `l + sum(min(g, l))` over the gaps `g` between consecutive occurrences,
/// which bends only where `l + 1` equals a gap. Those depths get nodes of
/// their own, so `cv` is linear on every segment.
pub struct Cst {
    tree: SuffixTree,
    nodes: Vec<CstNode>,
}

impl Cst {
    pub fn build(t: &Text) -> Cst {
        let tree = SuffixTree::build(t);
        let nodes = annotate(&tree);
        Cst { tree, nodes }
    }

    pub fn suffix_tree(&self) -> &SuffixTree {
        &self.tree
    }

    /// Recorded points, grouped by suffix-tree edge with depths increasing.
    pub fn nodes(&self) -> &[CstNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Suffix-tree nodes made explicit beyond the original ones.
    pub fn extra_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|c| c.depth != self.tree.depth(c.st_node))
            .count()
    }

    /// `(start, len)` of a node's substring, anchored at the first occurrence.
    pub fn substring_of(&self, c: &CstNode) -> (usize, usize) {
        (self.tree.min_leaf(c.st_node), c.depth)
    }
}

pub fn build_cst(t: &Text) -> Cst {
    Cst::build(t)
}

/// Per-class gap statistics relative to the current sweep depth `d`.
#[derive(Clone, Copy, Default)]
struct ClassStats {
    /// Sum of gaps `<= d`.
    small: usize,
    /// Count of gaps `> d`.
    big: usize,
}

/// Sweeps the depth from `n` down to 1, keeping one set of starting positions
/// per distinct substring of the current length.
fn annotate(tree: &SuffixTree) -> Vec<CstNode> {
    let n = tree.n();
    let m = tree.node_count();
    let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 1..m {
        if tree.suffix_start(v) == Some(n + 1) {
            continue;
        }
        by_depth[tree.depth(v)].push(v);
    }
    let mut dsu = ChangeListDsu::new(n);
    let mut stats = vec![ClassStats::default(); n + 1];
    let mut owner = vec![ROOT; n + 1];
    let mut succ = vec![0usize; n + 1];
    // bucket[g]: left ends of gaps of length g, checked against `succ` on use.
    let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    let mut stamp = vec![usize::MAX; n + 1];
    let mut extra: Vec<Vec<(usize, CstNode)>> = vec![Vec::new(); m];
    let mut at_node = vec![None; m];
    let mut changes = Vec::new();

    for d in (1..=n).rev() {
        // Gaps of length d + 1 stop fitting inside one occurrence.
        let pending = std::mem::take(&mut bucket[d + 1]);
        let mut touched = Vec::new();
        for x in pending {
            if succ[x] != x + d + 1 {
                continue;
            }
            let r = dsu.find(x);
            stats[r].small -= d + 1;
            stats[r].big += 1;
            let v = owner[r];
            if tree.parent_depth(v) < d && d < tree.depth(v) && stamp[r] != d {
                stamp[r] = d;
                touched.push(r);
            }
        }

        // Leaves first: a leaf whose edge holds only `$` sits at its parent's depth.
        for &v in &by_depth[d] {
            if let Some(s) = tree.suffix_start(v) {
                dsu.make_set(s).expect("position in range");
                stats[s] = ClassStats::default();
                owner[s] = v;
            }
        }
        for &v in &by_depth[d] {
            if !tree.is_leaf(v) {
                let kids = tree.children(v);
                let mut r = dsu.find(class_pos(tree, kids[0]));
                for &c in &kids[1..] {
                    let other = dsu.find(class_pos(tree, c));
                    let merged = ClassStats {
                        small: stats[r].small + stats[other].small,
                        big: stats[r].big + stats[other].big,
                    };
                    r = dsu.union(r, other, &mut changes).expect("same forest");
                    stats[r] = merged;
                    for &(x, y) in &changes {
                        if succ[x] != 0 {
                            remove_gap(&mut stats[r], succ[x] - x, d);
                        }
                        succ[x] = y;
                        let g = y - x;
                        if g > d {
                            stats[r].big += 1;
                        } else {
                            stats[r].small += g;
                            bucket[g].push(x);
                        }
                    }
                }
                owner[r] = v;
            }
        }

        for r in touched {
            let v = owner[r];
            extra[v].push((d, node_at(v, d, stats[r])));
        }
        for &v in &by_depth[d] {
            if tree.has_locus(v) {
                let r = dsu.find(class_pos(tree, v));
                at_node[v] = Some(node_at(v, d, stats[r]));
            }
        }
    }

    let mut out = Vec::new();
    for v in 1..m {
        let Some(own) = at_node[v] else { continue };
        let mut top = tree.parent_depth(v);
        // Extra points were recorded while the depth decreased.
        for &(_, mut c) in extra[v].iter().rev() {
            c.top = top;
            top = c.depth;
            out.push(c);
        }
        out.push(CstNode { top, ..own });
    }
    out
}

/// A starting position in the class of `v`.
fn class_pos(tree: &SuffixTree, v: usize) -> usize {
    tree.suffix_start(v).unwrap_or_else(|| tree.min_leaf(v))
}

fn remove_gap(s: &mut ClassStats, g: usize, d: usize) {
    if g > d {
        s.big -= 1;
    } else {
        s.small -= g;
    }
}

fn node_at(v: usize, d: usize, s: ClassStats) -> CstNode {
    CstNode {
        st_node: v,
        depth: d,
        top: 0,
        cv: s.small + d * s.big + d,
        delta: 1 + s.big,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn check(s: &[u8]) -> Cst {
        let t = Text::new(s.to_vec()).unwrap();
        let cst = Cst::build(&t);
        let tree = cst.suffix_tree();
        let mut seen = std::collections::BTreeSet::new();
        for c in cst.nodes() {
            let (start, len) = cst.substring_of(c);
            let sub = &s[start - 1..start - 1 + len];
            assert_eq!(
                (c.cv, c.delta),
                oracle::brute_cv_delta(s, sub),
                "{:?} in {:?}",
                String::from_utf8_lossy(sub),
                String::from_utf8_lossy(s)
            );
            assert!(tree.parent_depth(c.st_node) <= c.top && c.top < c.depth);
            assert!(seen.insert((c.st_node, c.depth)));
            // The segment is linear: check every length on it.
            for l in c.top + 1..=c.depth {
                let cv = c.cv - (c.depth - l) * c.delta;
                assert_eq!(cv, oracle::brute_cv_delta(s, &sub[..l]).0);
            }
        }
        // Segments tile every edge.
        for v in 1..tree.node_count() {
            if tree.has_locus(v) {
                let covered: usize = cst
                    .nodes()
                    .iter()
                    .filter(|c| c.st_node == v)
                    .map(|c| c.depth - c.top)
                    .sum();
                assert_eq!(covered, tree.depth(v) - tree.parent_depth(v));
            }
        }
        assert!(cst.node_count() <= 3 * s.len().max(1));
        cst
    }

    #[test]
    fn paper_string() {
        let s = b"abababbaba";
        let cst = check(s);
        let aba = cst
            .nodes()
            .iter()
            .find(|c| cst.substring_of(c) == (1, 3))
            .expect("aba is explicit");
        assert_eq!((aba.cv, aba.delta), (8, 2));
    }

    #[test]
    fn unary() {
        let cst = check(b"aaaa");
        let a = cst.nodes().iter().find(|c| c.depth == 1).unwrap();
        assert_eq!((a.cv, a.delta), (4, 1));
    }

    #[test]
    fn all_binary_up_to_10() {
        for n in 1..=10 {
            for mask in 0u32..1 << n {
                let s: Vec<u8> = (0..n).map(|i| b'a' + ((mask >> i) & 1) as u8).collect();
                check(&s);
            }
        }
    }

    proptest! {
        #[test]
        fn random_texts(s in prop::collection::vec(b'a'..b'd', 1..60)) {
            check(&s);
        }

        #[test]
        fn periodic_texts(root in prop::collection::vec(b'a'..b'c', 1..5), n in 1usize..80) {
            let s: Vec<u8> = root.iter().copied().cycle().take(n).collect();
            check(&s);
        }
    }
}

//! Joinable segment trees.
//!
//! A forest of sparse segment trees over leaves `1..=N` sharing one base `B`
//! (the least power of two `>= N`). Only initialized leaves and their
//! ancestors are stored. `join` merges two trees with disjoint leaf sets by
//! relinking nodes; the payload is recomputed only where both trees had a
//! node, which bounds the total work of any join order by `O(N log N)`.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{QlabError, Result};
use crate::text::GapValue;

const NIL: u32 = u32::MAX;
static NEXT_FOREST: AtomicU64 = AtomicU64::new(1);

/// Payload carried by every node.
pub trait Aggregate: Sized {
    type Ctx;

    fn leaf(pos: usize, ctx: &mut Self::Ctx) -> Self;

    /// Recomputes a payload from the children; at least one is present and a
    /// lone child's values are copied.
    fn update(left: Option<&Self>, right: Option<&Self>, ctx: &mut Self::Ctx) -> Self;

    /// Called once at the start of every join.
    fn begin_join(_ctx: &mut Self::Ctx) {}

    /// Called on each maximal subtree that a join takes over unchanged;
    /// `from_first` tells which operand it came from.
    fn adopt(&mut self, _from_first: bool, _ctx: &mut Self::Ctx) {}
}

struct Node<A> {
    left: u32,
    right: u32,
    payload: A,
}

/// Handle to one tree of a forest. Joins consume their operands.
#[derive(Debug)]
pub struct Jst {
    root: u32,
    base: usize,
    forest: u64,
}

impl Jst {
    pub fn is_empty(&self) -> bool {
        self.root == NIL
    }
}

pub struct JstForest<A: Aggregate> {
    base: usize,
    levels: u32,
    id: u64,
    nodes: Vec<Node<A>>,
    free: Vec<u32>,
    updates: u64,
    ctx: A::Ctx,
}

impl<A: Aggregate> JstForest<A> {
    /// Forest over positions `1..=n`.
    pub fn new(n: usize, ctx: A::Ctx) -> Self {
        let base = n.max(1).next_power_of_two();
        JstForest {
            base,
            levels: base.trailing_zeros(),
            id: NEXT_FOREST.fetch_add(1, Ordering::Relaxed),
            nodes: Vec::new(),
            free: Vec::new(),
            updates: 0,
            ctx,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn ctx(&self) -> &A::Ctx {
        &self.ctx
    }

    pub fn ctx_mut(&mut self) -> &mut A::Ctx {
        &mut self.ctx
    }

    /// Number of `update` calls made so far, singleton paths included.
    pub fn update_count(&self) -> u64 {
        self.updates
    }

    /// Nodes currently allocated (live plus free-listed).
    pub fn arena_len(&self) -> usize {
        self.nodes.len()
    }

    pub fn empty(&self) -> Jst {
        Jst {
            root: NIL,
            base: self.base,
            forest: self.id,
        }
    }

    pub fn singleton(&mut self, pos: usize) -> Result<Jst> {
        if pos == 0 || pos > self.base {
            return Err(QlabError::OutOfRange {
                what: "position",
                value: pos,
                max: self.base,
            });
        }
        let payload = A::leaf(pos, &mut self.ctx);
        let mut cur = self.alloc(NIL, NIL, payload);
        let idx = pos - 1;
        for level in 0..self.levels {
            let (l, r) = if (idx >> level) & 1 == 0 {
                (cur, NIL)
            } else {
                (NIL, cur)
            };
            let payload = {
                let child = &self.nodes[cur as usize].payload;
                let (lp, rp) = if l != NIL {
                    (Some(child), None)
                } else {
                    (None, Some(child))
                };
                A::update(lp, rp, &mut self.ctx)
            };
            self.updates += 1;
            cur = self.alloc(l, r, payload);
        }
        Ok(Jst {
            root: cur,
            base: self.base,
            forest: self.id,
        })
    }

    pub fn root(&self, t: &Jst) -> Option<&A> {
        (t.root != NIL).then(|| &self.nodes[t.root as usize].payload)
    }

    pub fn join(&mut self, a: Jst, b: Jst) -> Result<Jst> {
        for t in [&a, &b] {
            if t.base != self.base {
                return Err(QlabError::BaseMismatch {
                    left: self.base,
                    right: t.base,
                });
            }
            if t.forest != self.id {
                return Err(QlabError::InvalidArgument(
                    "tree belongs to another forest".into(),
                ));
            }
        }
        if a.root == NIL {
            return Ok(b);
        }
        if b.root == NIL {
            return Ok(a);
        }
        A::begin_join(&mut self.ctx);
        let root = self.join_nodes(a.root, b.root);
        Ok(Jst {
            root,
            base: self.base,
            forest: self.id,
        })
    }

    /// Returns the nodes of `t` to the free list.
    pub fn release(&mut self, t: Jst) {
        let mut stack = vec![t.root];
        while let Some(v) = stack.pop() {
            if v == NIL {
                continue;
            }
            let node = &self.nodes[v as usize];
            stack.push(node.left);
            stack.push(node.right);
            self.free.push(v);
        }
    }

    /// Initialized leaf positions of `t`, increasing.
    pub fn leaves(&self, t: &Jst) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(t.root, 0usize, self.levels)];
        while let Some((v, offset, height)) = stack.pop() {
            if v == NIL {
                continue;
            }
            if height == 0 {
                out.push(offset + 1);
                continue;
            }
            let node = &self.nodes[v as usize];
            let half = 1usize << (height - 1);
            stack.push((node.right, offset + half, height - 1));
            stack.push((node.left, offset, height - 1));
        }
        out
    }

    fn join_nodes(&mut self, x: u32, y: u32) -> u32 {
        if x == NIL {
            if y != NIL {
                self.nodes[y as usize].payload.adopt(false, &mut self.ctx);
            }
            return y;
        }
        if y == NIL {
            self.nodes[x as usize].payload.adopt(true, &mut self.ctx);
            return x;
        }
        let (xl, xr) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
        let (yl, yr) = (self.nodes[y as usize].left, self.nodes[y as usize].right);
        debug_assert!(
            xl != NIL || xr != NIL,
            "joined trees share an initialized leaf"
        );
        let l = self.join_nodes(xl, yl);
        let r = self.join_nodes(xr, yr);
        let payload = {
            let lp = (l != NIL).then(|| &self.nodes[l as usize].payload);
            let rp = (r != NIL).then(|| &self.nodes[r as usize].payload);
            A::update(lp, rp, &mut self.ctx)
        };
        self.updates += 1;
        let node = &mut self.nodes[x as usize];
        node.left = l;
        node.right = r;
        node.payload = payload;
        self.free.push(y);
        x
    }

    fn alloc(&mut self, left: u32, right: u32, payload: A) -> u32 {
        let node = Node {
            left,
            right,
            payload,
        };
        match self.free.pop() {
            Some(i) => {
                self.nodes[i as usize] = node;
                i
            }
            None => {
                self.nodes.push(node);
                u32::try_from(self.nodes.len() - 1).expect("arena exceeds u32 indices")
            }
        }
    }
}

/// Minimum, maximum and maxgap of the leaf set below a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxgapAgg {
    pub min: u32,
    pub max: u32,
    /// 0 for a single leaf.
    gap: u32,
}

impl MaxgapAgg {
    pub fn maxgap(&self) -> GapValue {
        if self.gap == 0 {
            GapValue::Unbounded
        } else {
            GapValue::Finite(self.gap as usize)
        }
    }
}

impl Aggregate for MaxgapAgg {
    type Ctx = ();

    fn leaf(pos: usize, _: &mut ()) -> Self {
        MaxgapAgg {
            min: pos as u32,
            max: pos as u32,
            gap: 0,
        }
    }

    fn update(left: Option<&Self>, right: Option<&Self>, _: &mut ()) -> Self {
        match (left, right) {
            (Some(l), Some(r)) => MaxgapAgg {
                min: l.min,
                max: r.max,
                gap: l.gap.max(r.gap).max(r.min - l.max),
            },
            (Some(one), None) | (None, Some(one)) => *one,
            (None, None) => unreachable!("update on a node without children"),
        }
    }
}

/// Joins each group's singletons in the given order and reports the root maxgaps.
pub fn maxgap_of_groups(n: usize, groups: &[Vec<usize>]) -> Result<Vec<GapValue>> {
    let mut forest = JstForest::<MaxgapAgg>::new(n, ());
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let mut acc = forest.empty();
        for &p in g {
            let s = forest.singleton(p)?;
            acc = forest.join(acc, s)?;
        }
        out.push(
            forest
                .root(&acc)
                .map_or(GapValue::Unbounded, |a| a.maxgap()),
        );
        forest.release(acc);
    }
    Ok(out)
}

/// Minimum and maximum of a subtree, each tagged with the join epoch and the
/// operand it came from. Tags go stale between joins and are only refreshed
/// on the subtrees a join actually looks at.
#[derive(Clone, Copy, Debug)]
pub struct ChangeListAgg {
    pub min: u32,
    pub max: u32,
    min_tag: u64,
    max_tag: u64,
}

#[derive(Debug, Default)]
pub struct ChangeCtx {
    epoch: u64,
    pairs: Vec<(usize, usize)>,
}

impl Aggregate for ChangeListAgg {
    type Ctx = ChangeCtx;

    fn leaf(pos: usize, _: &mut ChangeCtx) -> Self {
        ChangeListAgg {
            min: pos as u32,
            max: pos as u32,
            min_tag: 0,
            max_tag: 0,
        }
    }

    fn update(left: Option<&Self>, right: Option<&Self>, ctx: &mut ChangeCtx) -> Self {
        match (left, right) {
            (Some(l), Some(r)) => {
                if l.max_tag != r.min_tag {
                    ctx.pairs.push((l.max as usize, r.min as usize));
                }
                ChangeListAgg {
                    min: l.min,
                    max: r.max,
                    min_tag: l.min_tag,
                    max_tag: r.max_tag,
                }
            }
            (Some(one), None) | (None, Some(one)) => *one,
            (None, None) => unreachable!("update on a node without children"),
        }
    }

    fn begin_join(ctx: &mut ChangeCtx) {
        ctx.epoch += 1;
        ctx.pairs.clear();
    }

    fn adopt(&mut self, from_first: bool, ctx: &mut ChangeCtx) {
        let tag = (ctx.epoch << 1) | from_first as u64;
        self.min_tag = tag;
        self.max_tag = tag;
    }
}

/// Disjoint sets of positions whose union reports the successor changes.
pub struct ChangeListDsu {
    forest: JstForest<ChangeListAgg>,
    parent: Vec<usize>,
    size: Vec<usize>,
    trees: Vec<Option<Jst>>,
}

impl ChangeListDsu {
    /// Universe `1..=n`; sets are created on demand by [`Self::make_set`].
    pub fn new(n: usize) -> Self {
        ChangeListDsu {
            forest: JstForest::new(n, ChangeCtx::default()),
            parent: (0..=n).collect(),
            size: vec![0; n + 1],
            trees: (0..=n).map(|_| None).collect(),
        }
    }

    pub fn make_set(&mut self, x: usize) -> Result<()> {
        let t = self.forest.singleton(x)?;
        self.parent[x] = x;
        self.size[x] = 1;
        self.trees[x] = Some(t);
        Ok(())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = x;
        while self.parent[cur] != r {
            let next = self.parent[cur];
            self.parent[cur] = r;
            cur = next;
        }
        r
    }

    /// Merges the sets of `a` and `b` and returns the representative. `out`
    /// receives the pairs `(x, next(x))` of the merged set whose successor
    /// changed, sorted by `x`.
    pub fn union(&mut self, a: usize, b: usize, out: &mut Vec<(usize, usize)>) -> Result<usize> {
        out.clear();
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Ok(ra);
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        let ta = self.trees[ra].take().expect("live set");
        let tb = self.trees[rb].take().expect("live set");
        let t = self.forest.join(ta, tb)?;
        self.trees[ra] = Some(t);
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        out.extend_from_slice(&self.forest.ctx().pairs);
        out.sort_unstable();
        Ok(ra)
    }

    pub fn set_min(&mut self, x: usize) -> usize {
        let r = self.find(x);
        let t = self.trees[r].as_ref().expect("live set");
        self.forest.root(t).expect("nonempty set").min as usize
    }

    pub fn update_count(&self) -> u64 {
        self.forest.update_count()
    }
}

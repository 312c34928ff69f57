use serde::Serialize;

use super::cst::Cst;

/// Largest coverage reachable by a substring of one length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopePoint {
    pub length: usize,
    pub coverage: usize,
    /// Index into [`Cst::nodes`] of the segment attaining it.
    pub node: usize,
}

/// Shortest length covering at least `alpha` positions, with one witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub alpha: usize,
    pub length: usize,
    pub witness_start: usize,
    pub witness_len: usize,
    pub coverage: usize,
}

#[derive(Clone, Copy)]
struct Line {
    slope: i64,
    icept: i64,
    id: usize,
}

impl Line {
    fn at(&self, x: usize) -> i64 {
        self.slope * x as i64 + self.icept
    }

    /// Higher value wins; equal values go to the smaller id.
    fn beats(&self, other: &Line, x: usize) -> bool {
        let (a, b) = (self.at(x), other.at(x));
        a > b || (a == b && self.id < other.id)
    }
}

/// Li Chao tree over `1..=n` holding segments.
struct LiChao {
    n: usize,
    tree: Vec<Option<Line>>,
}

impl LiChao {
    fn new(n: usize) -> Self {
        LiChao {
            n,
            tree: vec![None; 4 * n.max(1)],
        }
    }

    fn insert_segment(&mut self, line: Line, lo: usize, hi: usize) {
        self.insert_range(1, 1, self.n, lo, hi, line);
    }

    fn insert_range(&mut self, v: usize, l: usize, r: usize, lo: usize, hi: usize, line: Line) {
        if hi < l || r < lo {
            return;
        }
        if lo <= l && r <= hi {
            self.insert_line(v, l, r, line);
            return;
        }
        let mid = (l + r) / 2;
        self.insert_range(2 * v, l, mid, lo, hi, line);
        self.insert_range(2 * v + 1, mid + 1, r, lo, hi, line);
    }

    fn insert_line(&mut self, mut v: usize, mut l: usize, mut r: usize, mut line: Line) {
        loop {
            let Some(mut cur) = self.tree[v] else {
                self.tree[v] = Some(line);
                return;
            };
            let mid = (l + r) / 2;
            if line.beats(&cur, mid) {
                std::mem::swap(&mut cur, &mut line);
                self.tree[v] = Some(cur);
            }
            // `cur` now wins at mid; the loser can only win on one side.
            if l == r {
                return;
            }
            if line.beats(&cur, l) {
                v *= 2;
                r = mid;
            } else if line.beats(&cur, r) {
                v = 2 * v + 1;
                l = mid + 1;
            } else {
                return;
            }
        }
    }

    fn query(&self, x: usize) -> Option<Line> {
        let (mut v, mut l, mut r) = (1, 1, self.n);
        let mut best: Option<Line> = None;
        loop {
            if let Some(line) = self.tree[v] {
                if best.is_none_or(|b| line.beats(&b, x)) {
                    best = Some(line);
                }
            }
            if l == r {
                return best;
            }
            let mid = (l + r) / 2;
            if x <= mid {
                v *= 2;
                r = mid;
            } else {
                v = 2 * v + 1;
                l = mid + 1;
            }
        }
    }
}

/// Upper envelope of all segments: for each length `1..=n`, the best coverage.
pub fn envelope(cst: &Cst) -> Vec<EnvelopePoint> {
    let n = cst.suffix_tree().n();
    let mut lc = LiChao::new(n);
    for (id, c) in cst.nodes().iter().enumerate() {
        let slope = c.delta as i64;
        let line = Line {
            slope,
            icept: c.cv as i64 - c.depth as i64 * slope,
            id,
        };
        lc.insert_segment(line, c.top + 1, c.depth);
    }
    (1..=n)
        .map(|x| {
            let line = lc.query(x).expect("every length has a substring");
            EnvelopePoint {
                length: x,
                coverage: line.at(x) as usize,
                node: line.id,
            }
        })
        .collect()
}

/// For every `alpha` in `1..=n` (entry `alpha - 1`), the least length of a
/// substring covering at least `alpha` positions.
pub fn all_partial_covers(cst: &Cst) -> Vec<TableEntry> {
    let env = envelope(cst);
    let n = env.len();
    let mut out = Vec::with_capacity(n);
    let mut x = 0;
    for alpha in 1..=n {
        // The first length reaching alpha never moves left as alpha grows.
        while env[x].coverage < alpha {
            x += 1;
        }
        let p = env[x];
        let (start, _) = cst.substring_of(&cst.nodes()[p.node]);
        out.push(TableEntry {
            alpha,
            length: p.length,
            witness_start: start,
            witness_len: p.length,
            coverage: p.coverage,
        });
    }
    out
}

//! Ukkonen's on-line construction over `T$`.
//!
//! Produces a raw tree with arbitrary node numbering; [`super::SuffixTree`]
//! renumbers it in preorder.

use rustc_hash::FxHashMap;

pub(super) const TERMINATOR: u16 = 256;
const NONE: usize = usize::MAX;

pub(super) struct RawTree {
    pub start: Vec<usize>,
    /// Exclusive end of the edge label; `NONE` for leaves (end of `T$`).
    pub end: Vec<usize>,
    pub children: FxHashMap<u64, usize>,
}

#[inline]
fn key(node: usize, symbol: u16) -> u64 {
    ((node as u64) << 9) | symbol as u64
}

pub(super) fn symbol_at(text: &[u8], i: usize) -> u16 {
    if i < text.len() {
        text[i] as u16
    } else {
        TERMINATOR
    }
}

pub(super) fn build_raw(text: &[u8]) -> RawTree {
    let n = text.len();
    let total = n + 1;
    let mut start = Vec::with_capacity(2 * total);
    let mut end = Vec::with_capacity(2 * total);
    let mut link = Vec::with_capacity(2 * total);
    let mut children: FxHashMap<u64, usize> = FxHashMap::default();
    children.reserve(2 * total);

    start.push(0);
    end.push(0);
    link.push(0);
    let root = 0;

    let mut active_node = root;
    let mut active_edge = 0;
    let mut active_len = 0;
    let mut remainder = 0;

    for i in 0..total {
        let c = symbol_at(text, i);
        remainder += 1;
        let mut last_new = NONE;
        while remainder > 0 {
            if active_len == 0 {
                active_edge = i;
            }
            let ec = symbol_at(text, active_edge);
            match children.get(&key(active_node, ec)).copied() {
                None => {
                    let leaf = start.len();
                    start.push(i);
                    end.push(NONE);
                    link.push(root);
                    children.insert(key(active_node, ec), leaf);
                    if last_new != NONE {
                        link[last_new] = active_node;
                        last_new = NONE;
                    }
                }
                Some(next) => {
                    let edge_end = if end[next] == NONE { i + 1 } else { end[next] };
                    let edge_len = edge_end - start[next];
                    if active_len >= edge_len {
                        active_edge += edge_len;
                        active_len -= edge_len;
                        active_node = next;
                        continue;
                    }
                    if symbol_at(text, start[next] + active_len) == c {
                        if last_new != NONE && active_node != root {
                            link[last_new] = active_node;
                        }
                        active_len += 1;
                        break;
                    }
                    let split = start.len();
                    start.push(start[next]);
                    end.push(start[next] + active_len);
                    link.push(root);
                    children.insert(key(active_node, ec), split);

                    let leaf = start.len();
                    start.push(i);
                    end.push(NONE);
                    link.push(root);
                    children.insert(key(split, c), leaf);

                    start[next] += active_len;
                    children.insert(key(split, symbol_at(text, start[next])), next);

                    if last_new != NONE {
                        link[last_new] = split;
                    }
                    last_new = split;
                }
            }
            remainder -= 1;
            if active_node == root && active_len > 0 {
                active_len -= 1;
                active_edge = i + 1 - remainder;
            } else if active_node != root {
                active_node = link[active_node];
            }
        }
    }

    let end = end
        .into_iter()
        .map(|e| if e == NONE { total } else { e })
        .collect();
    RawTree {
        start,
        end,
        children,
    }
}

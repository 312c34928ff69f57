//! Crochemore's partitioning of starting positions by equal substrings.
//!
//! After step `i` every live list holds `Occ_T(W)` for one length-`i`
//! substring `W`, in increasing order. Step `i + 1` drops position
//! `n - i + 1` and refines the lists using, as splitters, all but the largest
//! of the lists produced by each split of the previous step.

use crate::text::{GapValue, Text};

pub type ListId = usize;

/// Changes reported to a [`PartitionSink`]. Each event is delivered before the
/// state is modified, so the sink still sees the list as it was.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionEvent {
    /// A new list. At step 1 lists are reported fully populated; later lists
    /// start empty and receive their elements through `ElementMoved`.
    ListCreated {
        list: ListId,
        step: usize,
        seed: usize,
    },
    ElementMoved {
        from: ListId,
        to: ListId,
        pos: usize,
        step: usize,
    },
    /// Position dropped because the substring starting there would run past the end.
    ElementRemoved {
        list: ListId,
        pos: usize,
        step: usize,
    },
    ListRetired {
        list: ListId,
        step: usize,
    },
}

/// How list maxgaps react to the removal of a smallest or largest element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MaxgapRule {
    /// Recompute by scanning the list.
    #[default]
    Exact,
    /// Keep the old value; it can only overestimate.
    SkipExtremes,
}

pub trait PartitionSink {
    fn event(&mut self, state: &PartitionState, event: PartitionEvent);

    /// Called once every step has finished, with the final state.
    fn step_end(&mut self, _state: &PartitionState, _step: usize) {}
}

impl PartitionSink for Vec<PartitionEvent> {
    fn event(&mut self, _state: &PartitionState, event: PartitionEvent) {
        self.push(event);
    }
}

const NIL: u32 = 0;
const NONE: u32 = u32::MAX;

/// Per-list fields, 32 bytes so two share a cache line.
#[derive(Clone, Copy, Debug, Default)]
struct ListRec {
    head: u32,
    tail: u32,
    len: u32,
    gap: u32,
    since: u32,
    // Refinement bookkeeping: the twin receiving elements from the splitter
    // stamped in `tag`. `link` heads the chain of twins split off this step;
    // on a twin it points to the next older twin. A twin is never split in
    // the step that created it, so the two uses do not overlap.
    twin: u32,
    tag: u32,
    link: u32,
}

/// Links of one position, kept together since they are read together.
#[derive(Clone, Copy, Debug)]
struct Elem {
    prev: u32,
    next: u32,
    list: u32,
}

/// Live lists and their elements. Positions are 1-based.
#[derive(Debug)]
pub struct PartitionState {
    rule: MaxgapRule,
    elems: Vec<Elem>,
    lists: Vec<ListRec>,
}

impl PartitionState {
    pub fn head(&self, list: ListId) -> usize {
        self.lists[list].head as usize
    }

    pub fn tail(&self, list: ListId) -> usize {
        self.lists[list].tail as usize
    }

    pub fn len(&self, list: ListId) -> usize {
        self.lists[list].len as usize
    }

    pub fn is_empty(&self, list: ListId) -> bool {
        self.lists[list].len == 0
    }

    /// Maxgap as maintained under the configured [`MaxgapRule`].
    pub fn maxgap(&self, list: ListId) -> GapValue {
        let r = &self.lists[list];
        if r.len <= 1 {
            GapValue::Unbounded
        } else {
            GapValue::Finite(r.gap as usize)
        }
    }

    /// First step at which the list held its current elements.
    pub fn since(&self, list: ListId) -> usize {
        self.lists[list].since as usize
    }

    pub fn list_of(&self, pos: usize) -> ListId {
        self.elems[pos].list as ListId
    }

    pub fn list_count(&self) -> usize {
        self.lists.len()
    }

    pub fn elements(&self, list: ListId) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.lists[list].head;
        std::iter::from_fn(move || {
            (cur != NIL).then(|| {
                let x = cur;
                cur = self.elems[cur as usize].next;
                x as usize
            })
        })
    }

    pub fn live_lists(&self) -> impl Iterator<Item = ListId> + '_ {
        (0..self.lists.len()).filter(|&l| self.lists[l].len > 0)
    }

    fn new_list(&mut self, step: usize) -> ListId {
        self.lists.push(ListRec {
            since: step as u32,
            ..ListRec::default()
        });
        self.lists.len() - 1
    }

    fn append(&mut self, list: ListId, x: usize) {
        let r = &mut self.lists[list];
        let t = r.tail;
        self.elems[x] = Elem {
            prev: t,
            next: NIL,
            list: list as u32,
        };
        if t == NIL {
            r.head = x as u32;
        } else {
            self.elems[t as usize].next = x as u32;
            r.gap = r.gap.max(x as u32 - t);
        }
        r.tail = x as u32;
        r.len += 1;
    }

    fn unlink(&mut self, x: usize) {
        let Elem {
            prev: a,
            next: b,
            list,
        } = self.elems[x];
        let r = &mut self.lists[list as usize];
        if a == NIL {
            r.head = b;
        } else {
            self.elems[a as usize].next = b;
        }
        if b == NIL {
            r.tail = a;
        } else {
            self.elems[b as usize].prev = a;
        }
        r.len -= 1;
        if a != NIL && b != NIL {
            r.gap = r.gap.max(b - a);
        } else if self.rule == MaxgapRule::Exact {
            let mut g = 0;
            let mut cur = r.head;
            while cur != NIL && self.elems[cur as usize].next != NIL {
                let nx = self.elems[cur as usize].next;
                g = g.max(nx - cur);
                cur = nx;
            }
            r.gap = g;
        }
    }
}

/// Runs steps `1..=max_len` of the partitioning of `t`, reporting to `sink`.
pub fn crochemore_partition<S: PartitionSink + ?Sized>(
    t: &Text,
    max_len: usize,
    rule: MaxgapRule,
    sink: &mut S,
) {
    let n = t.len();
    assert!(
        (1..=n).contains(&max_len),
        "max_len {max_len} outside 1..={n}"
    );
    assert!(n < u32::MAX as usize, "text too long for 32-bit positions");
    let mut st = PartitionState {
        rule,
        elems: vec![
            Elem {
                prev: NIL,
                next: NIL,
                list: 0,
            };
            n + 1
        ],
        lists: Vec::new(),
    };

    // Step 1: one list per symbol, in symbol order.
    let mut by_symbol = [usize::MAX; 256];
    let mut symbols: Vec<u8> = t.iter().copied().collect();
    symbols.sort_unstable();
    symbols.dedup();
    for &c in &symbols {
        by_symbol[c as usize] = st.new_list(1);
    }
    for (i, &c) in t.iter().enumerate() {
        st.append(by_symbol[c as usize], i + 1);
    }
    let first_lists: Vec<ListId> = symbols.iter().map(|&c| by_symbol[c as usize]).collect();
    for &l in &first_lists {
        let seed = st.head(l);
        sink.event(
            &st,
            PartitionEvent::ListCreated {
                list: l,
                step: 1,
                seed,
            },
        );
    }
    let mut splitters = Vec::new();
    push_all_but_largest(&st, &first_lists, &mut splitters);

    let mut elements = Vec::new();
    let mut sizes = Vec::new();
    let mut touched = Vec::new();
    let mut family = Vec::new();
    let mut next_tag: u32 = 1;
    for step in 2..=max_len {
        // Snapshot splitter contents before anything changes; the
        // dropped position still counts as a member of its list at this point.
        sizes.clear();
        sizes.extend(splitters.iter().map(|&q| st.len(q)));
        snapshot(&st, &splitters, &sizes, &mut elements);
        // Drop the position whose substring no longer fits.
        let gone = n - step + 2;
        let l = st.list_of(gone);
        sink.event(
            &st,
            PartitionEvent::ElementRemoved {
                list: l,
                pos: gone,
                step,
            },
        );
        st.unlink(gone);
        st.elems[gone].list = u32::MAX;
        st.lists[l].since = step as u32;
        if st.is_empty(l) {
            sink.event(&st, PartitionEvent::ListRetired { list: l, step });
        }

        touched.clear();
        if u32::MAX - next_tag <= splitters.len() as u32 {
            for r in &mut st.lists {
                r.tag = 0;
            }
            next_tag = 1;
        }
        // Lists stamped below this were not touched yet in this step.
        let step_tag = next_tag;
        next_tag += splitters.len() as u32;
        let mut offset = 0;
        for qi in 0..splitters.len() {
            let size = sizes[qi];
            let tag = step_tag + qi as u32;
            for k in offset..offset + size {
                // The loop is bound by cache misses on scattered positions;
                // fetch the records of upcoming elements ahead of time.
                if let Some(&y) = elements.get(k + 16) {
                    prefetch(&st.elems, y - 1);
                }
                if let Some(&y) = elements.get(k + 8) {
                    let e = st.elems[y - 1];
                    prefetch(&st.lists, e.list as usize);
                    prefetch(&st.elems, e.prev as usize);
                    prefetch(&st.elems, e.next as usize);
                }
                let x = elements[k];
                if x < 2 {
                    continue;
                }
                let j = x - 1;
                if j > n - step + 1 {
                    continue;
                }
                let from = st.list_of(j);
                if st.lists[from].tag != tag {
                    let to = st.new_list(step);
                    let f = &mut st.lists[from];
                    if f.tag < step_tag {
                        f.link = NONE;
                        touched.push(from);
                    }
                    f.tag = tag;
                    f.twin = to as u32;
                    let older = std::mem::replace(&mut f.link, to as u32);
                    st.lists[to].link = older;
                    sink.event(
                        &st,
                        PartitionEvent::ListCreated {
                            list: to,
                            step,
                            seed: j,
                        },
                    );
                }
                let to = st.lists[from].twin as ListId;
                sink.event(
                    &st,
                    PartitionEvent::ElementMoved {
                        from,
                        to,
                        pos: j,
                        step,
                    },
                );
                st.unlink(j);
                st.lists[from].since = step as u32;
                st.append(to, j);
                if st.is_empty(from) {
                    sink.event(&st, PartitionEvent::ListRetired { list: from, step });
                }
            }
            offset += size;
        }

        // Children of each split: the remainder (if alive) and its twins.
        splitters.clear();
        for &from in &touched {
            family.clear();
            let mut c = st.lists[from].link;
            while c != NONE {
                family.push(c as ListId);
                c = st.lists[c as usize].link;
            }
            if !st.is_empty(from) {
                family.push(from);
            }
            // Twins were linked newest first; restore creation order.
            family.reverse();
            push_all_but_largest(&st, &family, &mut splitters);
        }
    }
    sink.step_end(&st, max_len);
}

/// Copies the elements of `lists` (of lengths `sizes`) into `out`, list after
/// list. Several lists are walked at once so their cache misses overlap.
fn snapshot(st: &PartitionState, lists: &[ListId], sizes: &[usize], out: &mut Vec<usize>) {
    const WAYS: usize = 16;
    out.clear();
    out.resize(sizes.iter().sum(), 0);
    // (current element, output slot) per walk.
    let mut walks = [(NIL, 0usize); WAYS];
    let mut next_list = 0;
    let mut slot = 0;
    loop {
        let mut busy = false;
        for w in &mut walks {
            while w.0 == NIL && next_list < lists.len() {
                *w = (st.lists[lists[next_list]].head, slot);
                slot += sizes[next_list];
                next_list += 1;
            }
            let (cur, at) = *w;
            if cur != NIL {
                out[at] = cur as usize;
                *w = (st.elems[cur as usize].next, at + 1);
                busy = true;
            }
        }
        if !busy {
            break;
        }
    }
}

/// Cache hint for `slice[i]`; out-of-range indices and other targets are no-ops.
#[inline(always)]
fn prefetch<T>(slice: &[T], i: usize) {
    #[cfg(target_arch = "x86_64")]
    if let Some(p) = slice.get(i) {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        // SAFETY: prefetching has no architectural effect and cannot fault.
        unsafe { _mm_prefetch::<_MM_HINT_T0>(p as *const T as *const i8) };
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = (slice, i);
}

fn push_all_but_largest(st: &PartitionState, family: &[ListId], out: &mut Vec<ListId>) {
    let Some(largest) = family.iter().copied().max_by_key(|&l| st.len(l)) else {
        return;
    };
    out.extend(family.iter().copied().filter(|&l| l != largest));
}

use crate::text::{z_array, Text};

/// Storage strategy for the linked list and the removal buckets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BufferMode {
    /// Flat arrays sized up front.
    #[default]
    Preallocated,
    /// Per-bucket vectors grown on demand.
    Growable,
}

/// All cover lengths in increasing order.
///
/// At step `i` the list holds the starting positions `j` with `Pref[j] >= i`
/// plus the sentinel `n + 1`; `T[1, i]` is a cover iff the list's maxgap is at
/// most `i`. Position `j` leaves the list at step `Pref[j] + 1`.
pub fn all_covers_ms(t: &Text, mode: BufferMode) -> Vec<usize> {
    let n = t.len();
    let pref = z_array(t);
    match mode {
        BufferMode::Preallocated => sweep_static(&pref, n),
        BufferMode::Growable => sweep_growable(&pref, n),
    }
}

fn sweep_static(pref: &[usize], n: usize) -> Vec<usize> {
    // Positions are 1..=n+1; prev/next indexed by position.
    let mut prev = vec![0usize; n + 2];
    let mut next = vec![0usize; n + 2];
    for j in 1..=n + 1 {
        prev[j] = j - 1;
        next[j] = j + 1;
    }

    // Counting sort of positions 2..=n by Pref value.
    let mut start = vec![0usize; n + 2];
    for &p in &pref[1..] {
        start[p + 1] += 1;
    }
    for v in 1..n + 2 {
        start[v] += start[v - 1];
    }
    let mut fill = start.clone();
    let mut order = vec![0usize; n.saturating_sub(1)];
    for (j0, &p) in pref.iter().enumerate().skip(1) {
        order[fill[p]] = j0 + 1;
        fill[p] += 1;
    }

    let mut gap = 1;
    let mut out = Vec::new();
    for i in 1..=n {
        for &j in &order[start[i - 1]..start[i]] {
            let (a, b) = (prev[j], next[j]);
            next[a] = b;
            prev[b] = a;
            gap = gap.max(b - a);
        }
        if gap <= i {
            out.push(i);
        }
    }
    out
}

fn sweep_growable(pref: &[usize], n: usize) -> Vec<usize> {
    let mut prev = Vec::new();
    let mut next = Vec::new();
    for j in 0..=n + 1 {
        prev.push(j.saturating_sub(1));
        next.push(j + 1);
    }
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (j0, &p) in pref.iter().enumerate().skip(1) {
        if buckets.len() <= p {
            buckets.resize_with(p + 1, Vec::new);
        }
        buckets[p].push(j0 + 1);
    }

    let mut gap = 1;
    let mut out = Vec::new();
    for i in 1..=n {
        if let Some(bucket) = buckets.get(i - 1) {
            for &j in bucket {
                let (a, b) = (prev[j], next[j]);
                next[a] = b;
                prev[b] = a;
                gap = gap.max(b - a);
            }
        }
        if gap <= i {
            out.push(i);
        }
    }
    out
}

/// Segment tree over a fixed array answering "next index at or after `from`
/// whose value is at least / below `k`".
pub(crate) struct ThresholdIndex {
    size: usize,
    len: usize,
    min: Vec<usize>,
    max: Vec<usize>,
}

impl ThresholdIndex {
    pub fn new(values: &[usize]) -> Self {
        let len = values.len();
        let size = len.max(1).next_power_of_two();
        let mut min = vec![usize::MAX; 2 * size];
        let mut max = vec![0usize; 2 * size];
        for (i, &v) in values.iter().enumerate() {
            min[size + i] = v;
            max[size + i] = v;
        }
        for v in (1..size).rev() {
            min[v] = min[2 * v].min(min[2 * v + 1]);
            max[v] = max[2 * v].max(max[2 * v + 1]);
        }
        ThresholdIndex {
            size,
            len,
            min,
            max,
        }
    }

    /// Smallest `i >= from` with `values[i] >= k`.
    pub fn next_at_least(&self, from: usize, k: usize) -> Option<usize> {
        self.descend(1, 0, self.size, from, &|v| self.max[v] >= k)
    }

    /// Smallest `i >= from` with `values[i] < k`.
    pub fn next_below(&self, from: usize, k: usize) -> Option<usize> {
        self.descend(1, 0, self.size, from, &|v| self.min[v] < k)
    }

    fn descend(
        &self,
        v: usize,
        lo: usize,
        hi: usize,
        from: usize,
        hit: &dyn Fn(usize) -> bool,
    ) -> Option<usize> {
        if hi <= from || lo >= self.len || !hit(v) {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.descend(2 * v, lo, mid, from, hit)
            .or_else(|| self.descend(2 * v + 1, mid, hi, from, hit))
    }

    /// Maximal runs `[a, b]` inside `from..=to` where `values >= k`.
    pub fn runs_at_least(&self, from: usize, to: usize, k: usize, out: &mut Vec<(usize, usize)>) {
        let mut cur = from;
        while cur <= to {
            let Some(a) = self.next_at_least(cur, k).filter(|&a| a <= to) else {
                break;
            };
            let b = self.next_below(a, k).map_or(to, |b| (b - 1).min(to));
            out.push((a, b));
            cur = b + 1;
        }
    }
}

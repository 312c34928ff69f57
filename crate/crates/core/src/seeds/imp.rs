//! Seeds from Crochemore's partitioning, without a suffix tree.
//!
//! Substrings at least as long as the period are all seeds. Shorter ones are
//! read off the partition: a list keeps the same elements over a range of
//! steps, and each such range is resolved against the three seed conditions
//! just before the list changes.

use serde::Serialize;

use super::threshold::ThresholdIndex;
use super::Package;
use crate::suffix_tree::{
    crochemore_partition, ListId, MaxgapRule, PartitionEvent, PartitionSink, PartitionState,
};
use crate::text::{borders, period_of, GapValue, Text};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ImpStats {
    pub period: usize,
    /// Lists whose length range was checked against the seed conditions.
    pub resolved_lists: usize,
    pub packages: usize,
}

/// All seeds of `t` as packages. List maxgaps are left stale when a smallest
/// or largest element leaves; the seed conditions absorb the overestimate.
pub fn seeds_imp(t: &Text) -> (Vec<Package>, ImpStats) {
    seeds_imp_with(t, MaxgapRule::SkipExtremes)
}

pub fn seeds_imp_with(t: &Text, rule: MaxgapRule) -> (Vec<Package>, ImpStats) {
    let n = t.len();
    let per = period_of(t);
    let b = borders(t);
    let rev = t.reversed();
    let br = borders(&rev);
    let mut sink = Resolver {
        n,
        index: ThresholdIndex::new(&b),
        bsuf_need: (0..=n)
            .map(|q| if q == 0 { 0 } else { n - q + 1 - br[n - q] })
            .collect(),
        out: Vec::new(),
        runs: Vec::new(),
        resolved: 0,
    };
    if per > 1 {
        crochemore_partition(t, per - 1, rule, &mut sink);
    }
    let mut out = sink.out;
    let resolved = sink.resolved;
    out.extend((1..=per.min(n + 1 - per)).map(|i| Package::new(i, i + per - 1, n)));
    let stats = ImpStats {
        period: per,
        resolved_lists: resolved,
        packages: out.len(),
    };
    (out, stats)
}

struct Resolver {
    n: usize,
    index: ThresholdIndex,
    /// Least length of a right candidate whose last occurrence is `q`.
    bsuf_need: Vec<usize>,
    out: Vec<Package>,
    runs: Vec<(usize, usize)>,
    resolved: usize,
}

impl Resolver {
    /// Emits the seeds among the substrings of lengths `since..=hi` whose
    /// occurrences are the elements of `list`.
    fn flush(&mut self, st: &PartitionState, list: ListId, hi: usize) {
        let lo = st.since(list);
        if st.is_empty(list) || lo > hi {
            return;
        }
        self.resolved += 1;
        let (p, q) = (st.head(list), st.tail(list));
        let mut need = lo.max(self.bsuf_need[q]);
        if let GapValue::Finite(g) = st.maxgap(list) {
            need = need.max(g);
        }
        if need > hi {
            return;
        }
        if p == 1 {
            self.out.push(Package::new(1, need, hi));
            return;
        }
        // Left condition: B[p + l - 1] >= p - 1, scanned over 0-based indices.
        self.runs.clear();
        self.index.runs_at_least(
            p + need - 2,
            (p + hi - 2).min(self.n - 1),
            p - 1,
            &mut self.runs,
        );
        for &(a, e) in &self.runs {
            self.out.push(Package::new(p, a + 1, e + 1));
        }
    }
}

impl PartitionSink for Resolver {
    fn event(&mut self, st: &PartitionState, ev: PartitionEvent) {
        match ev {
            PartitionEvent::ElementMoved {
                from: list, step, ..
            }
            | PartitionEvent::ElementRemoved { list, step, .. } => self.flush(st, list, step - 1),
            PartitionEvent::ListCreated { .. } | PartitionEvent::ListRetired { .. } => {}
        }
    }

    fn step_end(&mut self, st: &PartitionState, step: usize) {
        let live: Vec<ListId> = st.live_lists().collect();
        for list in live {
            self.flush(st, list, step);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::expand;
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn expanded(s: &[u8], rule: MaxgapRule) -> std::collections::BTreeSet<(usize, usize)> {
        let t = Text::new(s.to_vec()).unwrap();
        let (pkgs, stats) = seeds_imp_with(&t, rule);
        assert_eq!(stats.packages, pkgs.len());
        let got = expand(&t, &pkgs, usize::MAX).unwrap();
        let width: usize = pkgs.iter().map(Package::width).sum();
        assert_eq!(
            width,
            got.len(),
            "duplicate packages for {:?}",
            String::from_utf8_lossy(s)
        );
        got
    }

    #[test]
    fn examples() {
        for s in [
            "a",
            "aaaa",
            "ab",
            "abaab",
            "aabaabaa",
            "abaababaab",
            "abcabcab",
            "abbaabbaab",
        ] {
            assert_eq!(
                expanded(s.as_bytes(), MaxgapRule::Exact),
                oracle::brute_all_seeds(s.as_bytes()).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn all_binary_up_to_14_both_rules() {
        for n in 1..=14 {
            for mask in 0u32..1 << n {
                let s: Vec<u8> = (0..n).map(|i| b'a' + ((mask >> i) & 1) as u8).collect();
                let want = oracle::brute_all_seeds(&s).unwrap();
                assert_eq!(expanded(&s, MaxgapRule::SkipExtremes), want);
                if n <= 12 {
                    assert_eq!(expanded(&s, MaxgapRule::Exact), want);
                }
            }
        }
    }

    #[test]
    fn long_seeds_start_in_first_period() {
        let t = Text::try_from("ababab").unwrap();
        let (pkgs, stats) = seeds_imp(&t);
        assert_eq!(stats.period, 2);
        let got = expand(&t, &pkgs, 100).unwrap();
        for l in 2..=5 {
            assert!(got.contains(&(1, l)) && got.contains(&(2, l)));
        }
        assert!(got.contains(&(1, 6)));
    }

    proptest! {
        #[test]
        fn random_texts(s in prop::collection::vec(b'a'..b'd', 1..80)) {
            let want = oracle::brute_all_seeds(&s).unwrap();
            prop_assert_eq!(expanded(&s, MaxgapRule::SkipExtremes), want.clone());
            prop_assert_eq!(expanded(&s, MaxgapRule::Exact), want);
        }
    }
}

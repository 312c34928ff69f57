//! Brute-force reference implementations.
//!
//! Everything here works straight from the definitions with quadratic or
//! worse cost, and deliberately shares no code with the algorithm modules.
//! Substrings are identified by `(first occurrence, length)`, 1-based.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{QlabError, Result};
use crate::text::GapValue;

/// Largest input lengths the oracles accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub covers: usize,
    pub seeds: usize,
    pub superstring: usize,
    pub lambda: usize,
    pub lambda_max: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            covers: 512,
            seeds: 200,
            superstring: 30,
            lambda: 24,
            lambda_max: 3,
        }
    }
}

impl OracleBudget {
    /// Parses overrides such as `covers=1024,seeds=100`; unknown keys are errors.
    pub fn parse_overrides(self, spec: &str) -> Result<Self> {
        let mut b = self;
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| QlabError::InvalidArgument(format!("budget entry `{part}`")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| QlabError::InvalidArgument(format!("budget value `{value}`")))?;
            match key.trim() {
                "covers" => b.covers = value,
                "seeds" => b.seeds = value,
                "superstring" => b.superstring = value,
                "lambda" => b.lambda = value,
                "lambda_max" => b.lambda_max = value,
                other => return Err(QlabError::InvalidArgument(format!("budget key `{other}`"))),
            }
        }
        Ok(b)
    }

    /// Defaults overridden by the `QLAB_BUDGET` environment variable.
    pub fn from_env() -> Result<Self> {
        match std::env::var("QLAB_BUDGET") {
            Ok(spec) => Self::default().parse_overrides(&spec),
            Err(_) => Ok(Self::default()),
        }
    }
}

fn check(oracle: &'static str, n: usize, budget: usize) -> Result<()> {
    if n == 0 {
        return Err(QlabError::EmptyText);
    }
    if n > budget {
        return Err(QlabError::BudgetExceeded { oracle, n, budget });
    }
    Ok(())
}

/// 0-based starts of `s` in `t` by direct comparison.
pub fn brute_occurrences(t: &[u8], s: &[u8]) -> Vec<usize> {
    if s.is_empty() || s.len() > t.len() {
        return Vec::new();
    }
    (0..=t.len() - s.len())
        .filter(|&i| t[i..i + s.len()] == *s)
        .collect()
}

pub fn brute_maxgap(set: &BTreeSet<usize>) -> GapValue {
    let v: Vec<usize> = set.iter().copied().collect();
    let mut best = None;
    for i in 1..v.len() {
        let d = v[i] - v[i - 1];
        if best.is_none_or(|b| d > b) {
            best = Some(d);
        }
    }
    best.map_or(GapValue::Unbounded, GapValue::Finite)
}

fn covered_mask(t: &[u8], s: &[u8]) -> Vec<bool> {
    let mut mask = vec![false; t.len()];
    for p in brute_occurrences(t, s) {
        for m in &mut mask[p..p + s.len()] {
            *m = true;
        }
    }
    mask
}

/// Lengths `l` such that `T[1, l]` covers `T`, by marking covered positions.
pub fn brute_all_covers_with(t: &[u8], budget: &OracleBudget) -> Result<BTreeSet<usize>> {
    check("covers", t.len(), budget.covers)?;
    let n = t.len();
    Ok((1..=n)
        .filter(|&l| t[..l] == t[n - l..])
        .filter(|&l| covered_mask(t, &t[..l]).iter().all(|&c| c))
        .collect())
}

pub fn brute_all_covers(t: &[u8]) -> Result<BTreeSet<usize>> {
    brute_all_covers_with(t, &OracleBudget::default())
}

/// `lcp[i][j]` for 0-based `i, j`, with a zero row and column past the end.
fn lcp_table(t: &[u8]) -> Vec<Vec<u16>> {
    let n = t.len();
    let mut lcp = vec![vec![0u16; n + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..n).rev() {
            if t[i] == t[j] {
                lcp[i][j] = lcp[i + 1][j + 1] + 1;
            }
        }
    }
    lcp
}

/// Distinct substrings as `(first occurrence, length)` (0-based start) with
/// their 0-based occurrence lists.
fn distinct_substrings(t: &[u8], lcp: &[Vec<u16>]) -> Vec<(usize, usize, Vec<usize>)> {
    let n = t.len();
    let mut out = Vec::new();
    for i in 0..n {
        for l in 1..=n - i {
            if (0..i).any(|j| lcp[i][j] as usize >= l) {
                continue;
            }
            let occ: Vec<usize> = (i..=n - l).filter(|&j| lcp[i][j] as usize >= l).collect();
            out.push((i, l, occ));
        }
    }
    out
}

/// Overhang characterization of seeds, given occurrences of `T[p, p + l - 1]`.
fn tier1_condition(n: usize, lcp: &[Vec<u16>], l: usize, occ: &[usize]) -> bool {
    if occ.windows(2).any(|w| w[1] - w[0] > l) {
        return false;
    }
    let p = occ[0];
    let q = *occ.last().unwrap();
    // Left: a suffix of S of length r in [p, l - 1] equals T[1, r] (p is 0-based).
    let left = p == 0 || (p..l).any(|r| lcp[p + l - r][0] as usize >= r);
    // Right: a prefix of S of length r in [n - q - l, l - 1] equals T[n - r + 1, n].
    let need = n - q - l;
    let right = need == 0 || (need..l).any(|r| lcp[q][n - r] as usize >= r);
    left && right
}

/// All seeds of `T` by the overhang characterization.
pub fn brute_all_seeds_with(t: &[u8], budget: &OracleBudget) -> Result<BTreeSet<(usize, usize)>> {
    check("seeds", t.len(), budget.seeds)?;
    let lcp = lcp_table(t);
    Ok(distinct_substrings(t, &lcp)
        .into_iter()
        .filter(|(_, l, occ)| tier1_condition(t.len(), &lcp, *l, occ))
        .map(|(i, l, _)| (i + 1, l))
        .collect())
}

pub fn brute_all_seeds(t: &[u8]) -> Result<BTreeSet<(usize, usize)>> {
    brute_all_seeds_with(t, &OracleBudget::default())
}

/// Whether `s` covers `u`, by marking.
fn covers(u: &[u8], s: &[u8]) -> bool {
    covered_mask(u, s).iter().all(|&c| c)
}

/// All seeds of `T` as the substrings that cover some `X T Y` with `|X|, |Y| < |S|`.
pub fn brute_seeds_superstring_with(
    t: &[u8],
    budget: &OracleBudget,
) -> Result<BTreeSet<(usize, usize)>> {
    check("superstring", t.len(), budget.superstring)?;
    let n = t.len();
    let lcp = lcp_table(t);
    let mut out = BTreeSet::new();
    for (i, l, _) in distinct_substrings(t, &lcp) {
        let s = &t[i..i + l];
        // A cover of X T Y starts with S, so X is a prefix of S; likewise Y is a suffix.
        let found = (0..l).any(|j| {
            (0..l).any(|k| {
                let mut u = Vec::with_capacity(n + j + k);
                u.extend_from_slice(&s[..j]);
                u.extend_from_slice(t);
                u.extend_from_slice(&s[l - k..]);
                covers(&u, s)
            })
        });
        if found {
            out.insert((i + 1, l));
        }
    }
    Ok(out)
}

pub fn brute_seeds_superstring(t: &[u8]) -> Result<BTreeSet<(usize, usize)>> {
    brute_seeds_superstring_with(t, &OracleBudget::default())
}

/// Whether `s` (a substring of `t`) is a seed of `t`, straight from the
/// overhang conditions with direct comparisons.
pub fn brute_is_seed(t: &[u8], s: &[u8]) -> bool {
    let (n, l) = (t.len(), s.len());
    let occ = brute_occurrences(t, s);
    if occ.is_empty() || occ.windows(2).any(|w| w[1] - w[0] > l) {
        return false;
    }
    let p = occ[0];
    let q = *occ.last().unwrap();
    let left = p == 0 || (p..l).any(|r| s[l - r..] == t[..r]);
    let need = n - q - l;
    let right = need == 0 || (need..l).any(|r| s[..r] == t[n - r..]);
    left && right
}

/// Substrings that are a suffix and a seed of some prefix of `T`.
pub fn brute_left_candidates(t: &[u8]) -> Result<BTreeSet<(usize, usize)>> {
    check("seeds", t.len(), OracleBudget::default().seeds)?;
    let mut out = BTreeSet::new();
    for i in 1..=t.len() {
        let prefix = &t[..i];
        for l in 1..=i {
            let s = &prefix[i - l..];
            if brute_is_seed(prefix, s) {
                out.insert((brute_occurrences(t, s)[0] + 1, l));
            }
        }
    }
    Ok(out)
}

/// Substrings that are a prefix and a seed of some suffix of `T`.
pub fn brute_right_candidates(t: &[u8]) -> Result<BTreeSet<(usize, usize)>> {
    check("seeds", t.len(), OracleBudget::default().seeds)?;
    let n = t.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let suffix = &t[i..];
        for l in 1..=n - i {
            let s = &suffix[..l];
            if brute_is_seed(suffix, s) {
                out.insert((brute_occurrences(t, s)[0] + 1, l));
            }
        }
    }
    Ok(out)
}

/// Substrings with `maxgap(Occ) <= |S|`; a single occurrence counts as vacuous.
pub fn brute_quasiseeds(t: &[u8]) -> Result<BTreeSet<(usize, usize)>> {
    check("seeds", t.len(), OracleBudget::default().seeds)?;
    let lcp = lcp_table(t);
    Ok(distinct_substrings(t, &lcp)
        .into_iter()
        .filter(|(_, l, occ)| occ.windows(2).all(|w| w[1] - w[0] <= *l))
        .map(|(i, l, _)| (i + 1, l))
        .collect())
}

/// Number of positions covered by occurrences of `s`, and the number of
/// maximal covered fragments (0 when `s` does not occur).
pub fn brute_cv_delta(t: &[u8], s: &[u8]) -> (usize, usize) {
    let mask = covered_mask(t, s);
    let cv = mask.iter().filter(|&&c| c).count();
    let fragments = (0..mask.len())
        .filter(|&i| mask[i] && (i == 0 || !mask[i - 1]))
        .count();
    (cv, fragments)
}

/// For every `alpha` in `1..=n`, the least length of a substring covering at
/// least `alpha` positions (index 0 unused).
pub fn brute_partial_cover_table(t: &[u8]) -> Result<Vec<usize>> {
    check("pcover", t.len(), OracleBudget::default().seeds)?;
    let n = t.len();
    let mut best_cv = vec![0usize; n + 1];
    let mut seen = BTreeSet::new();
    for i in 0..n {
        for l in 1..=n - i {
            if seen.insert(&t[i..i + l]) {
                let (cv, _) = brute_cv_delta(t, &t[i..i + l]);
                best_cv[l] = best_cv[l].max(cv);
            }
        }
    }
    let mut table = vec![0usize; n + 1];
    for (alpha, slot) in table.iter_mut().enumerate().skip(1) {
        *slot = (1..=n)
            .find(|&l| best_cv[l] >= alpha)
            .expect("T covers itself");
    }
    Ok(table)
}

/// Pairs `(x, y)` of `a ∪ b` where `y` is the new successor of `x`.
pub fn brute_change_list(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    let succ = |s: &BTreeSet<usize>, x: usize| s.range(x + 1..).next().copied();
    let merged: BTreeSet<usize> = a.union(b).copied().collect();
    merged
        .iter()
        .filter_map(|&x| {
            let new = succ(&merged, x)?;
            let own = if a.contains(&x) {
                succ(a, x)
            } else {
                succ(b, x)
            };
            (own != Some(new)).then_some((x, new))
        })
        .collect()
}

/// All minimal `lambda`-covers of `T` by distinct length-`k` substrings,
/// each as a sorted list of the member strings.
pub fn brute_lambda_covers(t: &[u8], lambda: usize, k: usize) -> Result<BTreeSet<Vec<Vec<u8>>>> {
    let budget = OracleBudget::default();
    check("lambda", t.len(), budget.lambda)?;
    let n = t.len();
    if lambda == 0 || lambda > budget.lambda_max {
        return Err(QlabError::InvalidArgument(format!(
            "lambda {lambda} outside 1..={}",
            budget.lambda_max
        )));
    }
    if k <= 1 || k * lambda >= n {
        return Err(QlabError::InvalidArgument(format!(
            "length {k} violates 1 < k < n / lambda"
        )));
    }
    let words: Vec<&[u8]> = {
        let set: BTreeSet<&[u8]> = (0..=n - k).map(|i| &t[i..i + k]).collect();
        set.into_iter().collect()
    };
    let masks: Vec<u32> = words
        .iter()
        .map(|w| {
            covered_mask(t, w)
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .fold(0u32, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    let mut out = BTreeSet::new();
    let mut chosen = Vec::with_capacity(lambda);
    subsets(words.len(), lambda, 0, &mut chosen, &mut |c: &[usize]| {
        let union = c.iter().fold(0, |m, &i| m | masks[i]);
        if union != full {
            return;
        }
        // Minimal: dropping any member loses coverage. Checking single
        // removals suffices because coverage is monotone.
        let minimal = (0..c.len()).all(|skip| {
            c.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .fold(0, |m, (_, &i)| m | masks[i])
                != full
        });
        if minimal {
            out.insert(c.iter().map(|&i| words[i].to_vec()).collect());
        }
    });
    Ok(out)
}

fn subsets(
    m: usize,
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == size {
        f(chosen);
        return;
    }
    for i in from..m {
        chosen.push(i);
        subsets(m, size, i + 1, chosen, f);
        chosen.pop();
    }
}

/// Occurrence lists of all length-`i` substrings, grouped by content.
pub fn brute_groups(t: &[u8], i: usize) -> BTreeSet<Vec<usize>> {
    let mut m: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for p in 0..=t.len() - i {
        m.entry(&t[p..p + i]).or_default().push(p + 1);
    }
    m.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_examples() {
        assert_eq!(
            brute_all_covers(b"aabaaabaabaa").unwrap(),
            BTreeSet::from([5, 12])
        );
        assert_eq!(
            brute_all_covers(b"aaaa").unwrap(),
            BTreeSet::from([1, 2, 3, 4])
        );
        assert_eq!(brute_all_covers(b"abcab").unwrap(), BTreeSet::from([5]));
        let long = vec![b'a'; 513];
        assert!(matches!(
            brute_all_covers(&long),
            Err(QlabError::BudgetExceeded {
                oracle: "covers",
                ..
            })
        ));
    }

    #[test]
    fn seed_examples() {
        let t = b"aabaaabaabaa";
        let seeds = brute_all_seeds(t).unwrap();
        let shortest = seeds.iter().map(|s| s.1).min().unwrap();
        let names: BTreeSet<&[u8]> = seeds
            .iter()
            .filter(|s| s.1 == shortest)
            .map(|&(i, l)| &t[i - 1..i - 1 + l])
            .collect();
        assert_eq!(names, BTreeSet::from([&b"aaba"[..], &b"abaa"[..]]));
        assert!(seeds.contains(&(1, t.len())));
        assert_eq!(brute_seeds_superstring(t).unwrap(), seeds);
        assert!(brute_all_seeds(b"abab").unwrap().contains(&(1, 3)));
    }

    #[test]
    fn tiers_agree_on_small_binary_strings() {
        for n in 1..=8 {
            for bits in 0..(1u32 << n) {
                let t: Vec<u8> = (0..n).map(|i| b'a' + ((bits >> i) & 1) as u8).collect();
                assert_eq!(
                    brute_all_seeds(&t).unwrap(),
                    brute_seeds_superstring(&t).unwrap(),
                    "{}",
                    String::from_utf8_lossy(&t)
                );
            }
        }
    }

    #[test]
    fn quasiseed_examples() {
        let q = brute_quasiseeds(b"aaaa").unwrap();
        assert!(q.contains(&(1, 1)));
        let q = brute_quasiseeds(b"abab").unwrap();
        assert!(q.contains(&(1, 2)));
        assert!(q.contains(&(1, 3)));
        assert!(!brute_quasiseeds(b"abcab").unwrap().contains(&(1, 2)));
    }

    #[test]
    fn cv_examples() {
        assert_eq!(brute_cv_delta(b"abababbaba", b"aba"), (8, 2));
        assert_eq!(brute_cv_delta(b"aaaa", b"a"), (4, 1));
        assert_eq!(brute_cv_delta(b"abc", b"d"), (0, 0));
        // "ab" (at 1, 3, 5, 8) already covers 8 positions.
        assert_eq!(brute_cv_delta(b"abababbaba", b"ab"), (8, 2));
        assert_eq!(brute_partial_cover_table(b"abababbaba").unwrap()[8], 2);
    }

    #[test]
    fn change_list_examples() {
        let a = BTreeSet::from([1, 2, 3, 5]);
        let b = BTreeSet::from([4, 8]);
        assert_eq!(brute_change_list(&a, &b), vec![(3, 4), (4, 5), (5, 8)]);
        assert_eq!(
            brute_change_list(&BTreeSet::from([1]), &BTreeSet::from([2])),
            vec![(1, 2)]
        );
        assert_eq!(brute_maxgap(&BTreeSet::from([7])), GapValue::Unbounded);
        assert_eq!(
            brute_maxgap(&BTreeSet::from([1, 2, 3, 5])),
            GapValue::Finite(2)
        );
    }

    #[test]
    fn lambda_examples() {
        let covers = brute_lambda_covers(b"abababbaba", 2, 2).unwrap();
        assert!(covers.contains(&vec![b"ab".to_vec(), b"ba".to_vec()]));
        // With lambda = 1 the result is the covers of that length.
        let t = b"abaababaabaababaaba";
        for k in 2..t.len() {
            let one = brute_lambda_covers(t, 1, k).unwrap();
            let expect = covered_mask(t, &t[..k]).iter().all(|&c| c) && t[..k] == t[t.len() - k..];
            assert_eq!(!one.is_empty(), expect, "k = {k}");
        }
        assert!(brute_lambda_covers(b"abab", 2, 1).is_err());
    }

    #[test]
    fn budget_overrides() {
        let b = OracleBudget::default()
            .parse_overrides("covers=10, seeds=5")
            .unwrap();
        assert_eq!((b.covers, b.seeds, b.superstring), (10, 5, 30));
        assert!(OracleBudget::default().parse_overrides("bogus=1").is_err());
        assert!(OracleBudget::default().parse_overrides("covers").is_err());
    }
}

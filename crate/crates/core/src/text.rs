//! Border arrays, prefix arrays, occurrences, maxgap and periods.
//!
//! All positions handed out by this module are 1-based. The arrays are stored
//! 0-based internally (`slice[i - 1]` holds the value for position `i`).

use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{QlabError, Result};

/// An immutable, nonempty byte string.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Text(Box<[u8]>);

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(QlabError::EmptyText);
        }
        Ok(Text(bytes.into_boxed_slice()))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    /// `T[i, j]` with 1-based inclusive bounds.
    pub fn slice(&self, i: usize, j: usize) -> &[u8] {
        &self.0[i - 1..j]
    }

    pub fn reversed(&self) -> Text {
        let mut v = self.0.to_vec();
        v.reverse();
        Text(v.into_boxed_slice())
    }
}

impl Deref for Text {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for Text {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({:?})", String::from_utf8_lossy(&self.0))
    }
}

impl TryFrom<&str> for Text {
    type Error = QlabError;

    fn try_from(s: &str) -> Result<Self> {
        Text::new(s.as_bytes())
    }
}

/// `B[i]` is the length of the longest proper border of `T[1, i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderArray(Vec<usize>);

impl BorderArray {
    /// Value for the 1-based prefix length `i`.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Lengths of all borders of the whole text in decreasing order,
    /// obtained by iterating `B[n], B[B[n]], ...`. Excludes the text itself.
    pub fn border_chain(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut b = *self.0.last().unwrap_or(&0);
        while b > 0 {
            out.push(b);
            b = self.0[b - 1];
        }
        out
    }
}

/// `Pref[j]` is the longest `l` with `T[1, l] = T[j, j + l - 1]`; `Pref[1] = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixArray(Vec<usize>);

impl PrefixArray {
    pub fn get(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Maxgap of a position set. `Unbounded` stands for a set with at most one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GapValue {
    Finite(usize),
    Unbounded,
}

impl GapValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            GapValue::Finite(d) => Some(d),
            GapValue::Unbounded => None,
        }
    }

    pub fn at_most(self, len: usize) -> bool {
        matches!(self, GapValue::Finite(d) if d <= len)
    }
}

impl Serialize for GapValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

/// Sorted 1-based starting positions of a pattern.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OccList(Vec<usize>);

impl OccList {
    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        OccList(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn maxgap(&self) -> GapValue {
        maxgap(&self.0)
    }
}

/// KMP failure function, 0-based: `b[i]` is the longest proper border of `s[..=i]`.
pub(crate) fn borders(s: &[u8]) -> Vec<usize> {
    let mut b = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = b[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        b[i] = k;
    }
    b
}

/// Z-function with `z[0] = n`.
pub(crate) fn z_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while i + k < n && s[k] == s[i + k] {
            k += 1;
        }
        z[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

/// 0-based starts of `pattern` in `text`, appended to `out` (which is cleared).
/// `fail` must be the border array of `pattern`.
pub(crate) fn kmp_search_into(text: &[u8], pattern: &[u8], fail: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return;
    }
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && pattern[k] != c {
            k = fail[k - 1];
        }
        if pattern[k] == c {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = fail[k - 1];
        }
    }
}

/// Whether the occurrences of `pattern` cover `text`. The scan stops at the
/// first position no occurrence can reach any more.
pub(crate) fn kmp_covers(text: &[u8], pattern: &[u8], fail: &[usize]) -> bool {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return false;
    }
    // Positions below `reach` are covered.
    let (mut k, mut reach) = (0, 0);
    for (i, &c) in text.iter().enumerate() {
        if i >= reach + m {
            return false;
        }
        while k > 0 && pattern[k] != c {
            k = fail[k - 1];
        }
        if pattern[k] == c {
            k += 1;
        }
        if k == m {
            reach = i + 1;
            k = fail[k - 1];
        }
    }
    reach == text.len()
}

pub fn border_array(t: &Text) -> BorderArray {
    BorderArray(borders(t))
}

pub fn prefix_array(t: &Text) -> PrefixArray {
    PrefixArray(z_array(t))
}

pub fn occurrences(t: &Text, pattern: &[u8]) -> Result<OccList> {
    if pattern.is_empty() {
        return Err(QlabError::EmptyPattern);
    }
    if pattern.len() > t.len() {
        return Err(QlabError::PatternTooLong {
            pattern: pattern.len(),
            text: t.len(),
        });
    }
    let fail = borders(pattern);
    let mut out = Vec::new();
    kmp_search_into(t, pattern, &fail, &mut out);
    out.iter_mut().for_each(|p| *p += 1);
    Ok(OccList(out))
}

/// Maximum difference of consecutive elements of a sorted set.
pub fn maxgap(sorted: &[usize]) -> GapValue {
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .map_or(GapValue::Unbounded, GapValue::Finite)
}

/// Checks whether the sorted 0-based occurrence list of a length-`m` string
/// covers a text of length `n`, i.e. maxgap of `occ ∪ {-m, n}` equals `m`.
pub(crate) fn occurrences_cover(occ: &[usize], m: usize, n: usize) -> bool {
    match (occ.first(), occ.last()) {
        (Some(&first), Some(&last)) => {
            first == 0 && last + m == n && occ.windows(2).all(|w| w[1] - w[0] <= m)
        }
        _ => false,
    }
}

pub fn is_cover(t: &Text, c: &[u8]) -> Result<bool> {
    let occ = occurrences(t, c)?;
    let zero_based: Vec<usize> = occ.as_slice().iter().map(|p| p - 1).collect();
    Ok(occurrences_cover(&zero_based, c.len(), t.len()))
}

/// Smallest period, `n - B[n]`.
pub fn period(t: &Text) -> usize {
    period_of(t)
}

pub(crate) fn period_of(s: &[u8]) -> usize {
    s.len() - borders(s).last().copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Text {
        Text::try_from(s).unwrap()
    }

    fn naive_border(s: &[u8], i: usize) -> usize {
        (0..i).rev().find(|&l| s[..l] == s[i - l..i]).unwrap()
    }

    #[test]
    fn border_examples() {
        let b = border_array(&t("aabaaabaabaa"));
        assert_eq!(b.get(12), 5);
        assert_eq!(b.border_chain(), vec![5, 2, 1]);
        assert_eq!(border_array(&t("abcd")).as_slice(), &[0, 0, 0, 0]);
        assert_eq!(border_array(&t("aaaa")).as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(prefix_array(&t("aaaa")).as_slice(), &[4, 3, 2, 1]);
        assert_eq!(prefix_array(&t("abab")).as_slice(), &[4, 0, 2, 0]);
        let p = prefix_array(&t("aabcab"));
        assert_eq!((p.get(5), p.get(2)), (1, 1));
    }

    #[test]
    fn occurrence_examples() {
        let abab = t("abababbaba");
        assert_eq!(occurrences(&abab, b"aba").unwrap().as_slice(), &[1, 3, 8]);
        assert_eq!(
            occurrences(&t("aaaa"), b"a").unwrap().as_slice(),
            &[1, 2, 3, 4]
        );
        assert!(occurrences(&t("abc"), b"d").unwrap().is_empty());
        assert_eq!(occurrences(&t("abc"), b""), Err(QlabError::EmptyPattern));
        assert!(matches!(
            occurrences(&t("abc"), b"abcd"),
            Err(QlabError::PatternTooLong { .. })
        ));
    }

    #[test]
    fn maxgap_examples() {
        assert_eq!(maxgap(&[1, 2, 3, 5]), GapValue::Finite(2));
        assert_eq!(maxgap(&[7]), GapValue::Unbounded);
        assert_eq!(maxgap(&[]), GapValue::Unbounded);
        assert_eq!(serde_json::to_string(&GapValue::Unbounded).unwrap(), "null");
        assert_eq!(serde_json::to_string(&GapValue::Finite(3)).unwrap(), "3");
    }

    #[test]
    fn cover_examples() {
        assert!(is_cover(&t("aabaaabaabaa"), b"aabaa").unwrap());
        assert!(!is_cover(&t("abab"), b"aba").unwrap());
        let x = t("abcab");
        assert!(is_cover(&x, &x).unwrap());
    }

    #[test]
    fn period_examples() {
        assert_eq!(period(&t("ababab")), 2);
        assert_eq!(period(&t("abcabca")), 3);
        assert_eq!(period(&t("abcd")), 4);
    }

    #[test]
    fn empty_text_rejected() {
        assert_eq!(Text::new(Vec::new()), Err(QlabError::EmptyText));
    }

    fn small_text() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(b'a'..=b'c', 1..64)
    }

    proptest! {
        #[test]
        fn border_array_matches_naive(s in small_text()) {
            let b = borders(&s);
            for i in 1..=s.len() {
                prop_assert_eq!(b[i - 1], naive_border(&s, i));
            }
        }

        #[test]
        fn border_chain_is_all_borders(s in small_text()) {
            let n = s.len();
            let chain = border_array(&Text::new(s.clone()).unwrap()).border_chain();
            let naive: Vec<usize> = (1..n).rev().filter(|&l| s[..l] == s[n - l..]).collect();
            prop_assert_eq!(chain, naive);
        }

        #[test]
        fn prefix_array_matches_naive(s in small_text()) {
            let z = z_array(&s);
            for j in 0..s.len() {
                let l = (0..).take_while(|&k| j + k < s.len() && s[k] == s[j + k]).count();
                prop_assert_eq!(z[j], l);
            }
        }

        #[test]
        fn occurrences_match_naive(s in small_text(), p in prop::collection::vec(b'a'..=b'c', 1..4)) {
            prop_assume!(p.len() <= s.len());
            let text = Text::new(s.clone()).unwrap();
            let naive: Vec<usize> = (0..=s.len() - p.len())
                .filter(|&i| s[i..i + p.len()] == p[..])
                .map(|i| i + 1)
                .collect();
            prop_assert_eq!(occurrences(&text, &p).unwrap().into_vec(), naive);
        }

        #[test]
        fn is_cover_matches_position_marking(s in prop::collection::vec(b'a'..=b'b', 1..24)) {
            let text = Text::new(s.clone()).unwrap();
            let n = s.len();
            for i in 0..n {
                for j in i + 1..=n {
                    let c = &s[i..j];
                    let mut marked = vec![false; n];
                    for p in 0..=n - c.len() {
                        if &s[p..p + c.len()] == c {
                            marked[p..p + c.len()].iter_mut().for_each(|m| *m = true);
                        }
                    }
                    prop_assert_eq!(is_cover(&text, c).unwrap(), marked.iter().all(|&m| m));
                }
            }
        }

        #[test]
        fn kmp_covers_matches_is_cover(s in prop::collection::vec(b'a'..=b'c', 1..40)) {
            let text = Text::new(s.clone()).unwrap();
            let b = borders(&s);
            for len in 1..=s.len() {
                prop_assert_eq!(kmp_covers(&s, &s[..len], &b[..len]), is_cover(&text, &s[..len]).unwrap());
            }
        }

        #[test]
        fn period_is_least_shift(s in small_text()) {
            let n = s.len();
            let naive = (1..=n).find(|&p| (0..n - p).all(|i| s[i] == s[i + p])).unwrap();
            prop_assert_eq!(period_of(&s), naive);
        }
    }
}

//! Partial covers: the shortest substrings whose occurrences cover at least
//! `alpha` positions of the text.

mod cst;
mod envelope;

use serde::Serialize;

use crate::error::{QlabError, Result};
use crate::text::{occurrences, Text};

pub use cst::{build_cst, Cst, CstNode};
pub use envelope::{all_partial_covers, envelope, EnvelopePoint, TableEntry};

/// One substring of the minimal length for a query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartialCoverHit {
    /// Suffix-tree node whose edge holds the substring.
    pub node: usize,
    pub start: usize,
    pub len: usize,
    pub coverage: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialCoverAnswer {
    pub alpha: usize,
    pub length: usize,
    /// All substrings of that length covering at least `alpha`, in suffix-tree order.
    pub hits: Vec<PartialCoverHit>,
}

/// Substrings `T[start, start + l - 1]` for `l` in `lo..=hi`, all covering
/// at least the threshold; `coverage` is that of the shortest one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdRange {
    pub node: usize,
    pub start: usize,
    pub lo: usize,
    pub hi: usize,
    pub coverage: usize,
}

fn check_alpha(cst: &Cst, alpha: usize) -> Result<()> {
    let n = cst.suffix_tree().n();
    if alpha == 0 || alpha > n {
        return Err(QlabError::OutOfRange {
            what: "alpha",
            value: alpha,
            max: n,
        });
    }
    Ok(())
}

/// Least length `l` on the node's segment with coverage `>= alpha`.
fn first_reaching(c: &CstNode, alpha: usize) -> Option<usize> {
    if c.cv < alpha {
        return None;
    }
    let slack = (c.cv - alpha) / c.delta;
    Some((c.top + 1).max(c.depth.saturating_sub(slack)))
}

/// Shortest substrings covering at least `alpha` positions. The whole text
/// covers everything, so every `alpha` in `1..=n` has an answer.
pub fn partial_covers_for_alpha(cst: &Cst, alpha: usize) -> Result<PartialCoverAnswer> {
    check_alpha(cst, alpha)?;
    let best = cst
        .nodes()
        .iter()
        .filter_map(|c| first_reaching(c, alpha))
        .min()
        .expect("the full text reaches any alpha <= n");
    let hits = cst
        .nodes()
        .iter()
        .filter(|c| first_reaching(c, alpha) == Some(best))
        .map(|c| PartialCoverHit {
            node: c.st_node,
            start: cst.substring_of(c).0,
            len: best,
            coverage: c.cv - (c.depth - best) * c.delta,
        })
        .collect();
    Ok(PartialCoverAnswer {
        alpha,
        length: best,
        hits,
    })
}

/// Every substring covering at least `alpha` positions, as length ranges.
pub fn partial_covers_above(cst: &Cst, alpha: usize) -> Result<Vec<ThresholdRange>> {
    check_alpha(cst, alpha)?;
    Ok(cst
        .nodes()
        .iter()
        .filter_map(|c| {
            let lo = first_reaching(c, alpha)?;
            Some(ThresholdRange {
                node: c.st_node,
                start: cst.substring_of(c).0,
                lo,
                hi: c.depth,
                coverage: c.cv - (c.depth - lo) * c.delta,
            })
        })
        .collect())
}

/// Number of positions of `t` inside some occurrence of `s` (0 if none).
pub fn covered_count(t: &Text, s: &[u8]) -> usize {
    let Ok(occ) = occurrences(t, s) else { return 0 };
    let m = s.len();
    let occ = occ.as_slice();
    if occ.is_empty() {
        return 0;
    }
    m + occ.windows(2).map(|w| (w[1] - w[0]).min(m)).sum::<usize>()
}

use crate::text::{borders, kmp_covers, Text};

/// Shortest cover by testing the non-periodic borders from the shortest up.
///
/// A border `b_i` with `b_i <= 2 b_{i-1}` is covered by `b_{i-1}`, so it can
/// only be a cover if `b_{i-1}` already is; such borders are skipped.
pub fn shortest_cover_folk(t: &Text) -> usize {
    let n = t.len();
    let b = borders(t);
    let mut chain = Vec::new();
    let mut k = b[n - 1];
    while k > 0 {
        chain.push(k);
        k = b[k - 1];
    }
    chain.reverse();

    let mut prev = 0;
    for &len in &chain {
        if len > 2 * prev {
            // The failure function of T[1, len] is the prefix of B.
            if kmp_covers(t, &t[..len], &b[..len]) {
                return len;
            }
        }
        prev = len;
    }
    n
}

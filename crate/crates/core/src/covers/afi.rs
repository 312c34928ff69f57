use crate::text::{borders, z_array, Text};

/// Shortest cover in linear time.
///
/// Works on prefix lengths of the original text. The shortest cover of
/// `T[1, m]` is either `m` or the shortest cover of its longest border `B`;
/// when `|B| > 2m/3` the border is periodic with period `p = m - |B|` and has
/// the same shortest cover as its prefix of length `p + m mod p`.
pub fn shortest_cover_afi(t: &Text) -> usize {
    let b = borders(t);
    let pref = z_array(t);
    shortest_prefix_cover(&b, &pref, t.len())
}

fn shortest_prefix_cover(b: &[usize], pref: &[usize], m: usize) -> usize {
    let border = b[m - 1];
    if border == 0 {
        return m;
    }
    let next = if 3 * border <= 2 * m {
        border
    } else {
        let p = m - border;
        p + m % p
    };
    let c = shortest_prefix_cover(b, pref, next);
    if covers_prefix(pref, c, m) {
        c
    } else {
        m
    }
}

/// Whether `T[1, c]` covers `T[1, m]`, reading occurrences off the prefix array.
fn covers_prefix(pref: &[usize], c: usize, m: usize) -> bool {
    // Position of the last occurrence seen, 0-based.
    let mut last = 0;
    for j in 1..=m - c {
        if pref[j] >= c {
            if j - last > c {
                return false;
            }
            last = j;
        }
    }
    last == m - c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = |s: &str| Text::try_from(s).unwrap();
        assert_eq!(shortest_cover_afi(&t("aabaaabaabaa")), 5);
        assert_eq!(shortest_cover_afi(&t("aaaa")), 1);
        assert_eq!(shortest_cover_afi(&t("abababab")), 2);
        assert_eq!(shortest_cover_afi(&t("abaabaaba")), 3);
        assert_eq!(shortest_cover_afi(&t("x")), 1);
    }
}

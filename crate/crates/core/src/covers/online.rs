/// On-line shortest cover of every prefix.
///
/// `r[c]` holds the length of the longest prefix known to be covered by
/// `T[1, c]`. It starts at 0, which keeps the guard false for lengths that
/// are not superprimitive without a separate definedness flag.
#[derive(Clone, Debug, Default)]
pub struct OnlineCover {
    text: Vec<u8>,
    b: Vec<usize>,
    c: Vec<usize>,
    r: Vec<usize>,
}

impl OnlineCover {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        OnlineCover {
            text: Vec::with_capacity(n),
            b: Vec::with_capacity(n),
            c: Vec::with_capacity(n),
            r: Vec::with_capacity(n + 1),
        }
    }

    /// Appends a symbol and returns the shortest-cover length of the new prefix.
    pub fn push(&mut self, symbol: u8) -> usize {
        let k = self.text.len() + 1;
        self.text.push(symbol);

        let mut border = if k == 1 { 0 } else { self.b[k - 2] };
        while border > 0 && self.text[border] != symbol {
            border = self.b[border - 1];
        }
        if k > 1 && self.text[border] == symbol {
            border += 1;
        }
        self.b.push(border);

        if self.r.is_empty() {
            self.r.push(0);
        }
        self.r.push(0);

        let mut c = k;
        if border > 0 {
            let cb = self.c[border - 1];
            if self.r[cb] >= k - cb {
                c = cb;
            }
        }
        self.c.push(c);
        self.r[c] = k;
        c
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// `C[1..k]` for the symbols seen so far.
    pub fn shortest(&self) -> &[usize] {
        &self.c
    }

    pub fn borders(&self) -> &[usize] {
        &self.b
    }

    pub fn reach(&self) -> &[usize] {
        &self.r
    }
}

/// `C[1..n]` for a stream of symbols.
pub fn shortest_cover_online(symbols: impl IntoIterator<Item = u8>) -> Vec<usize> {
    let it = symbols.into_iter();
    let mut state = OnlineCover::with_capacity(it.size_hint().0);
    for s in it {
        state.push(s);
    }
    state.c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(shortest_cover_online(*b"aabaaabaabaa")[11], 5);
        assert_eq!(shortest_cover_online(*b"abab"), vec![1, 2, 3, 2]);
        assert_eq!(shortest_cover_online(*b"aaa"), vec![1, 1, 1]);
        assert!(shortest_cover_online(std::iter::empty()).is_empty());
    }

    #[test]
    fn borders_follow_kmp() {
        let mut st = OnlineCover::new();
        for &s in b"aabaaab" {
            st.push(s);
        }
        assert_eq!(st.borders(), &[0, 1, 0, 1, 2, 2, 3]);
        assert_eq!(st.len(), 7);
    }
}

//! Test strings: random, periodic, planted covers, and two classic words.
//!
//! Planted covers go through a solver for equality relations: each relation
//! `(i, j, len)` asks for `T[i, i + len - 1] = T[j, j + len - 1]`, and the
//! solver returns a string meeting all of them with as many distinct symbols
//! as allowed.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QlabError, Result};
use crate::text::{period_of, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Random,
    Periodic,
    PlantedCover,
    Fibonacci,
    ThueMorse,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::Random => "random",
            GenKind::Periodic => "periodic",
            GenKind::PlantedCover => "planted_cover",
            GenKind::Fibonacci => "fibonacci",
            GenKind::ThueMorse => "thue_morse",
        }
    }
}

impl FromStr for GenKind {
    type Err = QlabError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random" => GenKind::Random,
            "periodic" => GenKind::Periodic,
            "planted_cover" | "planted" => GenKind::PlantedCover,
            "fibonacci" => GenKind::Fibonacci,
            "thue_morse" => GenKind::ThueMorse,
            _ => {
                return Err(QlabError::InvalidArgument(format!(
                    "unknown generator kind {s:?}"
                )))
            }
        })
    }
}

/// Everything needed to regenerate a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub sigma: usize,
    /// Root length for `periodic`.
    pub period: Option<usize>,
    /// Planted cover length for `planted_cover`.
    pub cover_len: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize) -> Self {
        GenSpec {
            kind,
            n,
            sigma: 2,
            period: None,
            cover_len: None,
            seed: 0,
        }
    }

    pub fn sigma(mut self, sigma: usize) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn period(mut self, p: usize) -> Self {
        self.period = Some(p);
        self
    }

    pub fn cover_len(mut self, c: usize) -> Self {
        self.cover_len = Some(c);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// `KIND,n=..,sigma=..,seed=..,p=..,c=..`
impl FromStr for GenSpec {
    type Err = QlabError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',');
        let kind: GenKind = parts.next().unwrap_or("").trim().parse()?;
        let mut spec = GenSpec::new(kind, 0);
        let mut have_n = false;
        for part in parts {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                QlabError::InvalidArgument(format!("expected key=value, got {part:?}"))
            })?;
            let num = |v: &str| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| QlabError::InvalidArgument(format!("bad number {v:?} for {key}")))
            };
            match key.trim() {
                "n" => {
                    spec.n = num(value)? as usize;
                    have_n = true;
                }
                "sigma" => spec.sigma = num(value)? as usize,
                "seed" => spec.seed = num(value)?,
                "p" | "period" => spec.period = Some(num(value)? as usize),
                "c" | "cover" => spec.cover_len = Some(num(value)? as usize),
                other => return Err(QlabError::InvalidArgument(format!("unknown key {other:?}"))),
            }
        }
        if !have_n {
            return Err(QlabError::InvalidArgument("missing n=".into()));
        }
        Ok(spec)
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},n={},sigma={},seed={}",
            self.kind.name(),
            self.n,
            self.sigma,
            self.seed
        )?;
        if let Some(p) = self.period {
            write!(f, ",p={p}")?;
        }
        if let Some(c) = self.cover_len {
            write!(f, ",c={c}")?;
        }
        Ok(())
    }
}

/// Symbol for class rank `k` under an alphabet of size `sigma`: lowercase
/// letters while they suffice, raw bytes beyond.
fn symbol(k: usize, sigma: usize) -> u8 {
    let k = k % sigma;
    if sigma <= 26 {
        b'a' + k as u8
    } else {
        k as u8
    }
}

fn check_sigma(sigma: usize) -> Result<()> {
    if !(1..=256).contains(&sigma) {
        return Err(QlabError::InfeasibleSpec(format!(
            "sigma {sigma} outside 1..=256"
        )));
    }
    Ok(())
}

pub fn gen(spec: &GenSpec) -> Result<Text> {
    let n = spec.n;
    if n == 0 {
        return Err(QlabError::InfeasibleSpec("n must be positive".into()));
    }
    check_sigma(spec.sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let bytes = match spec.kind {
        GenKind::Random => (0..n)
            .map(|_| symbol(rng.gen_range(0..spec.sigma), spec.sigma))
            .collect(),
        GenKind::Periodic => {
            let p = spec
                .period
                .ok_or_else(|| QlabError::InfeasibleSpec("periodic needs p".into()))?;
            let root = primitive_root(p, spec.sigma, &mut rng)?;
            root.iter().copied().cycle().take(n).collect()
        }
        GenKind::PlantedCover => {
            let c = spec
                .cover_len
                .ok_or_else(|| QlabError::InfeasibleSpec("planted_cover needs c".into()))?;
            let occ = planted_occurrences(n, c, &mut rng)?;
            let rels: Vec<(usize, usize, usize)> = occ.iter().skip(1).map(|&p| (1, p, c)).collect();
            return solve_equality_relations(n, &rels, spec.sigma);
        }
        GenKind::Fibonacci => fibonacci(n),
        GenKind::ThueMorse => (0..n).map(|i| b'a' + (i.count_ones() % 2) as u8).collect(),
    };
    Text::new(bytes)
}

fn primitive_root(p: usize, sigma: usize, rng: &mut ChaCha8Rng) -> Result<Vec<u8>> {
    if p == 0 {
        return Err(QlabError::InfeasibleSpec("period must be positive".into()));
    }
    if p > 1 && sigma == 1 {
        return Err(QlabError::InfeasibleSpec(format!(
            "no primitive word of length {p} over one symbol"
        )));
    }
    loop {
        let root: Vec<u8> = (0..p)
            .map(|_| symbol(rng.gen_range(0..sigma), sigma))
            .collect();
        let per = period_of(&root);
        if per == p || !p.is_multiple_of(per) {
            return Ok(root);
        }
    }
}

/// Occurrences starting at 1 and ending at `n - c + 1`, consecutive ones at
/// most `c` apart. Gaps are either `c` or one overlap `g0` drawn per text from
/// `c / 2 + 1..=c`; several distinct overlaps, or any overlap of at most
/// `c / 2`, would force a short period and collapse the cover's alphabet.
/// Each draw keeps the remaining distance splittable into gaps of that range,
/// falling back to other gaps of the range when neither `g0` nor `c` does.
pub fn planted_occurrences(n: usize, c: usize, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    if c == 0 || c > n {
        return Err(QlabError::InfeasibleSpec(format!(
            "cover length {c} outside 1..={n}"
        )));
    }
    let last = n - c + 1;
    let lo = c / 2 + 1;
    let g0 = rng.gen_range(lo..=c);
    let splittable = |r: usize| r == 0 || (r >= lo && r.div_ceil(c) * lo <= r);
    let mut occ = vec![1];
    let mut p = 1;
    let mut choices = Vec::with_capacity(c);
    while p < last {
        let rest = last - p;
        let fits = |g: usize| g <= rest && splittable(rest - g);
        choices.clear();
        choices.extend([g0, c].into_iter().filter(|&g| fits(g)));
        if choices.is_empty() {
            choices.extend((lo..=c).filter(|&g| fits(g)));
        }
        p += if choices.is_empty() {
            rest.min(c)
        } else {
            choices[rng.gen_range(0..choices.len())]
        };
        occ.push(p);
    }
    Ok(occ)
}

fn fibonacci(n: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    let mut w = if n <= 1 { a } else { b };
    w.truncate(n);
    w
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = x;
        while self.parent[cur] != r {
            cur = std::mem::replace(&mut self.parent[cur], r);
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so classes are named by their first position.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The alphabet-maximal string of length `n` satisfying every relation
/// `(i, j, len)`, with symbols assigned by first occurrence and folded into
/// `sigma` letters. Each relation is split into two overlapping ones of
/// power-of-two length; level `k` unions are pushed down to level `k - 1` as
/// the two halves, so the work is `O(n log n)` after the relations.
pub fn solve_equality_relations(
    n: usize,
    relations: &[(usize, usize, usize)],
    sigma: usize,
) -> Result<Text> {
    if n == 0 {
        return Err(QlabError::InfeasibleSpec("n must be positive".into()));
    }
    check_sigma(sigma)?;
    let levels = usize::BITS as usize - n.leading_zeros() as usize;
    let mut per_level: Vec<Vec<(usize, usize)>> = vec![Vec::new(); levels];
    for &(i, j, len) in relations {
        if i == 0 || j == 0 || i + len > n + 1 || j + len > n + 1 {
            return Err(QlabError::MalformedRelation { i, j, len, n });
        }
        if len == 0 {
            continue;
        }
        let k = usize::BITS as usize - 1 - len.leading_zeros() as usize;
        let shift = len - (1 << k);
        per_level[k].push((i - 1, j - 1));
        per_level[k].push((i - 1 + shift, j - 1 + shift));
    }
    let mut dsu = Dsu::new(n);
    for k in (0..levels).rev() {
        let width = 1usize << k;
        // Only starts whose block fits in the text take part at this level.
        let span = n + 1 - width;
        dsu.parent[..span]
            .iter_mut()
            .enumerate()
            .for_each(|(i, p)| *p = i);
        for &(a, b) in &per_level[k] {
            dsu.union(a, b);
        }
        if k == 0 {
            break;
        }
        let half = width / 2;
        for a in 0..span {
            let r = dsu.find(a);
            if r != a {
                per_level[k - 1].push((a, r));
                per_level[k - 1].push((a + half, r + half));
            }
        }
    }
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = Vec::with_capacity(n);
    for p in 0..n {
        let r = dsu.find(p);
        if rank[r] == usize::MAX {
            rank[r] = next;
            next += 1;
        }
        out.push(symbol(rank[r], sigma));
    }
    Text::new(out)
}

//! Benchmark matrices and their CSV output.
//!
//! Every cell generates one input, then times each algorithm of the chosen
//! family on it after a warm-up. Outputs are reduced to a checksum that must
//! agree across the family, so a benchmark run is also a correctness run.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::covers::CoverAlgorithm;
use crate::error::{QlabError, Result};
use crate::generators::{gen, GenKind, GenSpec};
use crate::partial_covers::{all_partial_covers, Cst};
use crate::seeds::{Package, SeedAlgorithm};
use crate::text::{period, Text};

pub const CSV_HEADER: &str = "algorithm,kind,n,sigma,period,cover_len,trial,seconds,checksum";

/// One timed run. `period` and `cover_len` are measured on the input, so
/// they are filled for every kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub kind: String,
    pub n: usize,
    pub sigma: usize,
    pub period: usize,
    pub cover_len: usize,
    pub trial: usize,
    pub seconds: f64,
    pub checksum: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Covers,
    Seeds,
    Pcover,
}

impl Family {
    pub fn algorithms(self) -> Vec<&'static str> {
        match self {
            Family::Covers => CoverAlgorithm::ALL.iter().map(|a| a.name()).collect(),
            Family::Seeds => SeedAlgorithm::ALL.iter().map(|a| a.name()).collect(),
            Family::Pcover => vec!["cst"],
        }
    }

    /// Runs one algorithm and returns the checksum of its output; only the
    /// algorithm itself is inside `timed`.
    fn run(self, algorithm: &str, t: &Text) -> (f64, u64) {
        match self {
            Family::Covers => {
                let a = CoverAlgorithm::from_name(algorithm).expect("validated");
                let (secs, r) = timed(|| a.run(t));
                (secs, mix(r.shortest_len as u64))
            }
            Family::Seeds => {
                let a = SeedAlgorithm::from_name(algorithm).expect("validated");
                let (secs, r) = timed(|| a.run(t));
                (secs, seeds_checksum(&r.packages))
            }
            Family::Pcover => {
                let (secs, table) = timed(|| all_partial_covers(&Cst::build(t)));
                let sum = table.iter().fold(0u64, |h, e| {
                    mix(h ^ ((e.alpha as u64) << 32) ^ e.length as u64)
                });
                (secs, sum)
            }
        }
    }
}

impl Family {
    /// Mean time of back-to-back runs lasting at least `min_seconds` in
    /// total, with the checksum of the first run.
    fn run_for(self, algorithm: &str, t: &Text, min_seconds: f64) -> (f64, u64) {
        let (mut total, checksum) = self.run(algorithm, t);
        let mut runs = 1;
        while total < min_seconds {
            total += self.run(algorithm, t).0;
            runs += 1;
        }
        (total / runs as f64, checksum)
    }
}

fn timed<R>(f: impl FnOnce() -> R) -> (f64, R) {
    let start = Instant::now();
    let r = f();
    // Keep strictly positive even on coarse clocks.
    (start.elapsed().as_secs_f64().max(1e-9), r)
}

/// splitmix64 finalizer.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sum of `mix(i) * l + mix(!i)` over the `(first occurrence i, length l)` of
/// every seed. It ignores how the seeds are split into packages, so the three
/// algorithms agree exactly when their seed sets do (up to hash collisions).
pub fn seeds_checksum(pkgs: &[Package]) -> u64 {
    let mut sum = 0u64;
    for p in pkgs {
        let tag = if p.reversed { 1u64 << 63 } else { 0 };
        let i = p.i as u64 | tag;
        let (lo, hi) = (p.min_len() as u64, p.max_len() as u64);
        let count = hi - lo + 1;
        let len_sum = (lo + hi).wrapping_mul(count) / 2;
        sum = sum
            .wrapping_add(mix(i).wrapping_mul(len_sum))
            .wrapping_add(mix(!i).wrapping_mul(count));
    }
    sum
}

fn default_sizes() -> Vec<usize> {
    (14..=20).map(|k| 1 << k).collect()
}

fn default_kinds() -> Vec<GenKind> {
    vec![GenKind::Random]
}

fn default_sigmas() -> Vec<usize> {
    vec![2, 4, 26]
}

fn default_trials() -> usize {
    5
}

fn default_rounds() -> usize {
    1
}

fn default_warmup() -> usize {
    1
}

/// A benchmark matrix, usually read from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub family: Family,
    /// Empty means every algorithm of the family.
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<usize>,
    #[serde(default = "default_kinds")]
    pub kinds: Vec<GenKind>,
    #[serde(default = "default_sigmas")]
    pub sigmas: Vec<usize>,
    /// Root lengths for `periodic`.
    #[serde(default)]
    pub periods: Vec<usize>,
    /// Root lengths as fractions of `n` for `periodic`, rounded down, at least 1.
    #[serde(default)]
    pub period_fractions: Vec<f64>,
    /// Planted cover lengths for `planted_cover`.
    #[serde(default)]
    pub cover_lens: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_warmup")]
    pub warmup: usize,
    /// A trial repeats the algorithm until this much time has passed and
    /// reports the mean; 0 times a single run.
    #[serde(default)]
    pub min_trial_seconds: f64,
    /// Passes over the whole matrix, each running `trials` trials per cell.
    /// Spreading a cell's trials over time keeps a slow spell on a shared
    /// machine from landing on one size only.
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default)]
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(family: Family) -> Self {
        BenchConfig {
            family,
            algorithms: Vec::new(),
            sizes: default_sizes(),
            kinds: default_kinds(),
            sigmas: default_sigmas(),
            periods: Vec::new(),
            period_fractions: Vec::new(),
            cover_lens: Vec::new(),
            trials: default_trials(),
            warmup: default_warmup(),
            min_trial_seconds: 0.0,
            rounds: default_rounds(),
            seed: 0,
        }
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        let cfg: BenchConfig = toml::from_str(s)
            .map_err(|e| QlabError::InvalidArgument(format!("bench config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(QlabError::InvalidArgument(format!("bench config: {msg}")));
        let known = self.family.algorithms();
        if let Some(a) = self
            .algorithms
            .iter()
            .find(|a| !known.contains(&a.as_str()))
        {
            return bad(format!("unknown algorithm {a:?}"));
        }
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return bad("sizes must be nonempty and positive".into());
        }
        if self.kinds.is_empty() || self.sigmas.is_empty() {
            return bad("kinds and sigmas must be nonempty".into());
        }
        if let Some(s) = self.sigmas.iter().find(|&&s| !(1..=256).contains(&s)) {
            return bad(format!("sigma {s} outside 1..=256"));
        }
        if self.trials == 0 || self.rounds == 0 {
            return bad("trials and rounds must be positive".into());
        }
        if !(self.min_trial_seconds >= 0.0 && self.min_trial_seconds.is_finite()) {
            return bad("min_trial_seconds must be finite and >= 0".into());
        }
        if self.kinds.contains(&GenKind::Periodic)
            && self.periods.is_empty()
            && self.period_fractions.is_empty()
        {
            return bad("periodic needs periods or period_fractions".into());
        }
        if self
            .period_fractions
            .iter()
            .any(|f| !(*f > 0.0 && *f <= 1.0))
        {
            return bad("period fractions must lie in (0, 1]".into());
        }
        if self.kinds.contains(&GenKind::PlantedCover) && self.cover_lens.is_empty() {
            return bad("planted_cover needs cover_lens".into());
        }
        Ok(())
    }

    fn algorithm_list(&self) -> Vec<String> {
        if self.algorithms.is_empty() {
            self.family
                .algorithms()
                .into_iter()
                .map(String::from)
                .collect()
        } else {
            self.algorithms.clone()
        }
    }

    /// Generator specs of all cells, in run order.
    pub fn cells(&self) -> Vec<GenSpec> {
        let mut out = Vec::new();
        for &kind in &self.kinds {
            // The two fixed words ignore sigma.
            let sigmas = match kind {
                GenKind::Fibonacci | GenKind::ThueMorse => vec![2],
                _ => self.sigmas.clone(),
            };
            for &sigma in &sigmas {
                for &n in &self.sizes {
                    let base = GenSpec::new(kind, n).sigma(sigma);
                    match kind {
                        GenKind::Periodic => {
                            let mut ps: Vec<usize> =
                                self.periods.iter().copied().filter(|&p| p <= n).collect();
                            ps.extend(
                                self.period_fractions
                                    .iter()
                                    .map(|f| ((f * n as f64) as usize).max(1)),
                            );
                            ps.sort_unstable();
                            ps.dedup();
                            out.extend(ps.into_iter().map(|p| base.clone().period(p)));
                        }
                        GenKind::PlantedCover => out.extend(
                            self.cover_lens
                                .iter()
                                .filter(|&&c| c <= n)
                                .map(|&c| base.clone().cover_len(c)),
                        ),
                        _ => out.push(base),
                    }
                }
            }
        }
        for (k, spec) in out.iter_mut().enumerate() {
            spec.seed = mix(self.seed ^ k as u64);
        }
        out
    }
}

/// Rows of a run plus every cell where the family's checksums disagreed.
#[derive(Clone, Debug, Default)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub mismatches: Vec<String>,
}

/// Keeps freed memory in the process, so timings do not include the kernel
/// faulting in and zeroing fresh pages for every large allocation. Without
/// it, glibc switches between reusing and returning memory depending on
/// allocation history, which shows up as jumps between neighbouring sizes.
/// Affects the whole process; a no-op outside glibc.
pub fn keep_freed_memory() {
    #[cfg(all(target_os = "linux", target_env = "gnu"))]
    // SAFETY: mallopt only adjusts allocator tuning parameters.
    unsafe {
        libc::mallopt(libc::M_MMAP_MAX, 0);
        libc::mallopt(libc::M_TRIM_THRESHOLD, -1);
    }
}

/// Runs the matrix sequentially, passing each row to `on_row` as it is
/// produced. Calls [`keep_freed_memory`] first.
pub fn run_bench(
    cfg: &BenchConfig,
    mut on_row: impl FnMut(&BenchRow) -> Result<()>,
) -> Result<BenchOutcome> {
    cfg.validate()?;
    keep_freed_memory();
    let algorithms = cfg.algorithm_list();
    let mut outcome = BenchOutcome::default();
    for round in 0..cfg.rounds {
        for spec in cfg.cells() {
            let t = gen(&spec)?;
            let per = period(&t);
            let cover_len = CoverAlgorithm::Folk.run(&t).shortest_len;
            let mut sums: Vec<(String, u64)> = Vec::new();
            for alg in &algorithms {
                for _ in 0..cfg.warmup {
                    cfg.family.run(alg, &t);
                }
                for k in 1..=cfg.trials {
                    let (seconds, checksum) = cfg.family.run_for(alg, &t, cfg.min_trial_seconds);
                    let row = BenchRow {
                        algorithm: alg.clone(),
                        kind: spec.kind.name().to_string(),
                        n: spec.n,
                        sigma: spec.sigma,
                        period: per,
                        cover_len,
                        trial: round * cfg.trials + k,
                        seconds,
                        checksum,
                    };
                    on_row(&row)?;
                    outcome.rows.push(row);
                    if k == 1 {
                        sums.push((alg.clone(), checksum));
                    }
                }
            }
            if round == 0 && sums.windows(2).any(|w| w[0].1 != w[1].1) {
                outcome.mismatches.push(format!("{spec}: {sums:?}"));
            }
        }
    }
    Ok(outcome)
}

/// Appends rows to a CSV file, writing the header only into an empty file and
/// refusing files with a different header.
pub struct CsvSink {
    writer: csv::Writer<File>,
}

impl CsvSink {
    pub fn append(path: &Path) -> Result<Self> {
        let io = |e: std::io::Error| QlabError::InvalidArgument(format!("{}: {e}", path.display()));
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .read(true)
            .open(path)
            .map_err(io)?;
        let fresh = file.metadata().map_err(io)?.len() == 0;
        if !fresh {
            let mut first = String::new();
            BufReader::new(File::open(path).map_err(io)?)
                .read_line(&mut first)
                .map_err(io)?;
            if first.trim_end() != CSV_HEADER {
                return Err(QlabError::InvalidArgument(format!(
                    "{} has a different header: {:?}",
                    path.display(),
                    first.trim_end()
                )));
            }
        }
        let mut file = file;
        if fresh {
            writeln!(file, "{CSV_HEADER}").map_err(io)?;
        }
        Ok(CsvSink {
            writer: csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(file),
        })
    }

    pub fn write(&mut self, row: &BenchRow) -> Result<()> {
        self.writer
            .serialize(row)
            .and_then(|_| self.writer.flush().map_err(csv::Error::from))
            .map_err(|e| QlabError::InvalidArgument(format!("writing CSV: {e}")))
    }
}

pub fn write_csv(out: impl Write, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| QlabError::InvalidArgument(format!("writing CSV: {e}")))?;
    }
    w.flush()
        .map_err(|e| QlabError::InvalidArgument(format!("writing CSV: {e}")))
}

pub fn read_csv(input: impl std::io::Read) -> Result<Vec<BenchRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r
        .headers()
        .map_err(|e| QlabError::InvalidArgument(format!("reading CSV: {e}")))?
        .iter()
        .map(String::from)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(QlabError::InvalidArgument(format!(
            "unexpected CSV header {header:?}"
        )));
    }
    r.deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| QlabError::InvalidArgument(format!("reading CSV: {e}")))
}

/// Median seconds of one algorithm on one cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MedianRow {
    pub algorithm: String,
    pub kind: String,
    pub n: usize,
    pub sigma: usize,
    pub period: usize,
    pub cover_len: usize,
    pub trials: usize,
    pub median: f64,
}

/// Groups rows by everything except trial and timing. Even counts take the
/// mean of the two middle values.
pub fn medians(rows: &[BenchRow]) -> Vec<MedianRow> {
    type Key = (String, String, usize, usize, usize, usize);
    let mut groups: BTreeMap<Key, Vec<f64>> = BTreeMap::new();
    for r in rows {
        let key = (
            r.algorithm.clone(),
            r.kind.clone(),
            r.n,
            r.sigma,
            r.period,
            r.cover_len,
        );
        groups.entry(key).or_default().push(r.seconds);
    }
    groups
        .into_iter()
        .map(|((algorithm, kind, n, sigma, period, cover_len), mut xs)| {
            xs.sort_by(f64::total_cmp);
            let m = xs.len();
            let median = if m % 2 == 1 {
                xs[m / 2]
            } else {
                (xs[m / 2 - 1] + xs[m / 2]) / 2.0
            };
            MedianRow {
                algorithm,
                kind,
                n,
                sigma,
                period,
                cover_len,
                trials: m,
                median,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(family: Family) -> BenchConfig {
        let mut cfg = BenchConfig::new(family);
        cfg.sizes = vec![64, 200];
        cfg.kinds = vec![
            GenKind::Random,
            GenKind::Periodic,
            GenKind::PlantedCover,
            GenKind::Fibonacci,
        ];
        cfg.sigmas = vec![2, 4];
        cfg.periods = vec![3];
        cfg.period_fractions = vec![0.66];
        cfg.cover_lens = vec![7];
        cfg.trials = 2;
        cfg
    }

    #[test]
    fn families_agree_on_small_matrix() {
        for family in [Family::Covers, Family::Seeds, Family::Pcover] {
            let cfg = small(family);
            let out = run_bench(&cfg, |_| Ok(())).unwrap();
            assert!(out.mismatches.is_empty(), "{:?}", out.mismatches);
            let per_cell = cfg.algorithm_list().len() * cfg.trials;
            assert_eq!(out.rows.len(), cfg.cells().len() * per_cell);
            assert!(out.rows.iter().all(|r| r.seconds > 0.0));
        }
    }

    #[test]
    fn repeated_trials_report_the_mean() {
        let mut cfg = BenchConfig::new(Family::Covers);
        cfg.sizes = vec![256];
        cfg.sigmas = vec![2];
        cfg.algorithms = vec!["folk".into()];
        cfg.trials = 2;
        cfg.min_trial_seconds = 0.01;
        let t0 = Instant::now();
        let out = run_bench(&cfg, |_| Ok(())).unwrap();
        assert!(t0.elapsed().as_secs_f64() >= 0.02);
        // One folk run on 256 symbols is far below the trial length.
        assert!(out.rows.iter().all(|r| r.seconds < 0.005));
    }

    #[test]
    fn rounds_number_trials_consecutively() {
        let mut cfg = small(Family::Covers);
        cfg.sizes = vec![64, 128];
        cfg.algorithms = vec!["folk".into()];
        cfg.rounds = 3;
        let out = run_bench(&cfg, |_| Ok(())).unwrap();
        assert_eq!(out.rows.len(), cfg.cells().len() * 3 * cfg.trials);
        let mut trials: Vec<_> = out
            .rows
            .iter()
            .filter(|r| r.n == 64 && r.kind == "random" && r.sigma == 2)
            .map(|r| r.trial)
            .collect();
        trials.sort();
        assert_eq!(trials, (1..=3 * cfg.trials).collect::<Vec<_>>());
        assert!(BenchConfig::from_toml("family = \"covers\"\nrounds = 0\n").is_err());
    }

    #[test]
    fn cells_are_deterministic() {
        let cfg = small(Family::Covers);
        assert_eq!(cfg.cells(), cfg.cells());
        let kinds: Vec<_> = cfg
            .cells()
            .iter()
            .map(|c| (c.kind, c.n, c.period))
            .collect();
        assert!(kinds.contains(&(GenKind::Periodic, 200, Some(132))));
        // The fixed words appear once per size.
        assert_eq!(
            kinds.iter().filter(|k| k.0 == GenKind::Fibonacci).count(),
            2
        );
    }

    #[test]
    fn seeds_checksum_ignores_splitting() {
        let whole = [Package::new(2, 3, 9)];
        let split = [Package::new(2, 6, 9), Package::new(2, 3, 5)];
        assert_eq!(seeds_checksum(&whole), seeds_checksum(&split));
        assert_ne!(seeds_checksum(&whole), seeds_checksum(&split[..1]));
    }

    #[test]
    fn config_parsing() {
        let cfg = BenchConfig::from_toml(
            "family = \"seeds\"\nsizes = [128]\nkinds = [\"periodic\"]\nperiods = [2]\n",
        )
        .unwrap();
        assert_eq!(cfg.trials, 5);
        assert_eq!(cfg.sigmas, vec![2, 4, 26]);
        assert!(BenchConfig::from_toml("family = \"seeds\"\nalgorithms = [\"folk\"]\n").is_err());
        assert!(BenchConfig::from_toml("family = \"covers\"\nkinds = [\"periodic\"]\n").is_err());
        assert!(BenchConfig::from_toml("family = \"covers\"\nbogus = 1\n").is_err());
        assert!(BenchConfig::from_toml("family = \"covers\"\nmin_trial_seconds = -1.0\n").is_err());
    }

    #[test]
    fn csv_round_trip_and_medians() {
        let row = |trial, seconds| BenchRow {
            algorithm: "folk".into(),
            kind: "random".into(),
            n: 8,
            sigma: 2,
            period: 5,
            cover_len: 8,
            trial,
            seconds,
            checksum: 42,
        };
        let rows = vec![row(1, 0.5), row(2, 0.25), row(3, 2.0), row(4, 1.0)];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with(CSV_HEADER));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
        let m = medians(&rows);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].median, 0.75);
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}

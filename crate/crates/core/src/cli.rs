//! The `qlab` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bench::{medians, run_bench, BenchConfig, CsvSink};
use crate::covers::CoverAlgorithm;
use crate::error::{QlabError, Result};
use crate::generators::{gen, GenSpec};
use crate::oracle::OracleBudget;
use crate::partial_covers::{
    all_partial_covers, partial_covers_above, partial_covers_for_alpha, Cst,
};
use crate::seeds::{expand, SeedAlgorithm, EXPAND_LIMIT};
use crate::text::Text;
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qlab",
    version,
    about = "Covers, seeds and partial covers of strings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Shortest cover (and all covers for ms, ms-static).
    Cover {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "folk")]
        algorithm: String,
        #[arg(long)]
        json: bool,
    },
    /// All seeds, as packages.
    Seeds {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "kkrrw")]
        algorithm: String,
        /// Also list every seed as (first occurrence, length).
        #[arg(long)]
        expand: bool,
        #[arg(long)]
        json: bool,
    },
    /// Shortest partial covers.
    Pcover {
        #[command(flatten)]
        input: InputArgs,
        /// Shortest substrings covering at least this many positions.
        #[arg(long, conflicts_with_all = ["all", "above"])]
        alpha: Option<usize>,
        /// The table for every alpha in 1..=n.
        #[arg(long, conflicts_with = "above")]
        all: bool,
        /// Every substring covering at least this many positions.
        #[arg(long)]
        above: Option<usize>,
        /// With --above, keep only ranges whose shortest member is this long.
        #[arg(long, requires = "above")]
        min_len: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a string into a file, with its parameters in FILE.json.
    Gen {
        #[arg(long = "gen", value_name = "SPEC")]
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every algorithm against the brute-force oracles.
    Verify {
        /// Oracle size limits, e.g. `covers=256,seeds=100`; QLAB_BUDGET applies first.
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a benchmark matrix and append rows to a CSV.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Raw bytes of the text.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,
    /// Generator spec `KIND,n=..,sigma=..,seed=..,p=..,c=..`.
    #[arg(long = "gen", value_name = "SPEC")]
    gen: Option<String>,
    /// Keep only the first N bytes.
    #[arg(long)]
    take: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<Text> {
        let mut bytes = match (&self.input, &self.gen) {
            (Some(path), _) => std::fs::read(path).map_err(|e| io_err(path, e))?,
            (None, Some(spec)) => gen(&spec.parse()?)?.as_bytes().to_vec(),
            (None, None) => unreachable!("clap requires one"),
        };
        if let Some(k) = self.take {
            bytes.truncate(k);
        }
        Text::new(bytes)
    }
}

fn io_err(path: &Path, e: std::io::Error) -> QlabError {
    QlabError::InvalidArgument(format!("{}: {e}", path.display()))
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(value).expect("serializable");
    line(out, s)
}

fn line(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<()> {
    match writeln!(out, "{s}") {
        Ok(()) => Ok(()),
        // A closed pipe (`qlab ... | head`) ends the output quietly.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(EXIT_OK),
        Err(e) => Err(QlabError::InvalidArgument(format!("stdout: {e}"))),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code.
pub fn run(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qlab: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Cover {
            input,
            algorithm,
            json,
        } => {
            let alg = CoverAlgorithm::from_name(&algorithm).ok_or_else(|| {
                QlabError::InvalidArgument(format!("unknown cover algorithm {algorithm:?}"))
            })?;
            let t = input.load()?;
            let r = alg.run(&t);
            if json {
                print_json(
                    out,
                    &json!({ "algorithm": alg.name(), "n": t.len(), "result": r }),
                )?;
            } else {
                line(
                    out,
                    format_args!("shortest cover length {}", r.shortest_len),
                )?;
                if let Some(all) = &r.all_cover_lens {
                    line(out, format_args!("cover lengths {all:?}"))?;
                }
            }
        }
        Cmd::Seeds {
            input,
            algorithm,
            expand: want_expand,
            json,
        } => {
            let alg = SeedAlgorithm::from_name(&algorithm).ok_or_else(|| {
                QlabError::InvalidArgument(format!("unknown seed algorithm {algorithm:?}"))
            })?;
            let t = input.load()?;
            let r = alg.run(&t);
            let seeds = if want_expand {
                Some(expand(&t, &r.packages, EXPAND_LIMIT)?)
            } else {
                None
            };
            if json {
                print_json(
                    out,
                    &json!({ "algorithm": alg.name(), "n": t.len(), "result": r, "seeds": seeds }),
                )?;
            } else {
                line(
                    out,
                    format_args!("{} seeds in {} packages", r.count, r.packages.len()),
                )?;
                if let Some(l) = r.shortest_len {
                    line(out, format_args!("shortest seed length {l}"))?;
                }
                for (i, l) in seeds.iter().flatten() {
                    line(
                        out,
                        format_args!(
                            "{i}\t{l}\t{}",
                            String::from_utf8_lossy(t.slice(*i, i + l - 1))
                        ),
                    )?;
                }
            }
        }
        Cmd::Pcover {
            input,
            alpha,
            all,
            above,
            min_len,
            json,
        } => {
            let t = input.load()?;
            let cst = Cst::build(&t);
            if let Some(alpha) = alpha {
                let a = partial_covers_for_alpha(&cst, alpha)?;
                let w = a.hits[0];
                let report = json!({
                    "alpha": alpha,
                    "length": a.length,
                    "witness_start": w.start,
                    "witness_len": w.len,
                    "coverage": w.coverage,
                    "hits": a.hits,
                });
                if json {
                    print_json(out, &report)?;
                } else {
                    for h in &a.hits {
                        let s = String::from_utf8_lossy(t.slice(h.start, h.start + h.len - 1));
                        line(out, format_args!("{}\t{}\t{s}", h.start, h.coverage))?;
                    }
                }
            } else if all {
                let table = all_partial_covers(&cst);
                if json {
                    print_json(out, &table)?;
                } else {
                    for e in &table {
                        line(
                            out,
                            format_args!(
                                "{}\t{}\t{}\t{}",
                                e.alpha, e.length, e.witness_start, e.coverage
                            ),
                        )?;
                    }
                }
            } else if let Some(alpha) = above {
                let mut ranges = partial_covers_above(&cst, alpha)?;
                if let Some(m) = min_len {
                    ranges.retain(|r| r.lo >= m);
                }
                ranges.sort_by_key(|r| (std::cmp::Reverse(r.coverage), r.start, r.lo));
                if json {
                    print_json(out, &ranges)?;
                } else {
                    for r in &ranges {
                        let s = String::from_utf8_lossy(t.slice(r.start, r.start + r.lo - 1));
                        line(
                            out,
                            format_args!("{}\t{}..={}\t{}\t{s:?}", r.start, r.lo, r.hi, r.coverage),
                        )?;
                    }
                }
            } else {
                return Err(QlabError::InvalidArgument(
                    "pcover needs --alpha, --all or --above".into(),
                ));
            }
        }
        Cmd::Gen { spec, out: path } => {
            let spec: GenSpec = spec.parse()?;
            let t = gen(&spec)?;
            std::fs::write(&path, t.as_bytes()).map_err(|e| io_err(&path, e))?;
            let mut side = path.clone().into_os_string();
            side.push(".json");
            let side = PathBuf::from(side);
            let body =
                serde_json::to_string_pretty(&json!({ "spec": spec, "gen": spec.to_string() }))
                    .expect("serializable");
            std::fs::write(&side, body + "\n").map_err(|e| io_err(&side, e))?;
            line(
                out,
                format_args!("wrote {} bytes to {}", t.len(), path.display()),
            )?;
        }
        Cmd::Verify {
            budget,
            cases,
            seed,
            json,
        } => {
            let mut b = OracleBudget::from_env()?;
            if let Some(spec) = budget {
                b = b.parse_overrides(&spec)?;
            }
            let report = run_verify(&VerifyConfig {
                budget: b,
                cases,
                seed,
            });
            if json {
                print_json(out, &report)?;
            } else {
                for c in &report.checks {
                    let status = if c.failed == 0 { "PASS" } else { "FAIL" };
                    line(
                        out,
                        format_args!(
                            "{status} {} ({} cases, {} failed)",
                            c.name, c.cases, c.failed
                        ),
                    )?;
                    for f in &c.failures {
                        line(out, format_args!("    {f}"))?;
                    }
                }
            }
            return Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            });
        }
        Cmd::Bench { config, out: csv } => {
            let text = std::fs::read_to_string(&config).map_err(|e| io_err(&config, e))?;
            let cfg = BenchConfig::from_toml(&text)?;
            let mut sink = csv.as_deref().map(CsvSink::append).transpose()?;
            let outcome = run_bench(&cfg, |row| match sink.as_mut() {
                Some(s) => s.write(row),
                None => Ok(()),
            })?;
            if sink.is_none() {
                crate::bench::write_csv(&mut *out, &outcome.rows)?;
            }
            for m in medians(&outcome.rows) {
                let _ = writeln!(
                    err,
                    "{} {} n={} sigma={} period={}: median {:.6}s",
                    m.algorithm, m.kind, m.n, m.sigma, m.period, m.median
                );
            }
            if !outcome.mismatches.is_empty() {
                for m in &outcome.mismatches {
                    let _ = writeln!(err, "checksum mismatch: {m}");
                }
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

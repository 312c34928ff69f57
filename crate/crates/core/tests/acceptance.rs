//! Acceptance suite. One test runs every criterion in sequence (timings stay
//! clean on a busy machine) and prints a PASS/FAIL line for each.
//!
//! `QLAB_ACCEPTANCE_ONLY=name,name` restricts the run to some criteria.
//! `QLAB_CORPUS=path` enables the corpus check (never gating).

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlab::bench::{medians, run_bench, BenchConfig, Family};
use qlab::covers::CoverAlgorithm;
use qlab::generators::{gen, GenKind, GenSpec};
use qlab::jst::{ChangeListDsu, Jst, JstForest, MaxgapAgg};
use qlab::oracle;
use qlab::partial_covers::{
    all_partial_covers, covered_count, partial_covers_above, partial_covers_for_alpha, Cst,
};
use qlab::seeds::{expand, Package, SeedAlgorithm, EXPAND_LIMIT};
use qlab::{GapValue, Text};

type Outcome = Result<String, String>;

/// Criteria whose stated expectation contradicts the definitions; they are
/// run and reported but do not fail the suite. See `table8_is_three_strict`.
const KNOWN_UNATTAINABLE: &[&str] = &["partial_covers_table8"];

struct Suite {
    only: Option<Vec<String>>,
    failed: Vec<String>,
}

impl Suite {
    fn new() -> Self {
        let only = std::env::var("QLAB_ACCEPTANCE_ONLY")
            .ok()
            .map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
        Suite {
            only,
            failed: Vec::new(),
        }
    }

    fn check(&mut self, name: &'static str, limit: Duration, f: impl FnOnce() -> Outcome) {
        if let Some(only) = &self.only {
            if !only.iter().any(|o| name.starts_with(o.as_str())) {
                println!("SKIP {name}");
                return;
            }
        }
        let t0 = Instant::now();
        let r = f();
        let took = t0.elapsed();
        let r = match r {
            Ok(d) if took > limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match r {
            Ok(d) => println!("PASS {name} [{took:.2?}] {d}"),
            Err(e) => {
                let note = if KNOWN_UNATTAINABLE.contains(&name) {
                    " (known unattainable)"
                } else {
                    ""
                };
                println!("FAIL {name}{note} [{took:.2?}] {e}");
                if note.is_empty() {
                    self.failed.push(name.to_string());
                }
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn text(s: &str) -> Text {
    Text::try_from(s).unwrap()
}

fn show(t: &[u8]) -> String {
    String::from_utf8_lossy(t).into_owned()
}

fn strings(t: &Text, subs: &BTreeSet<(usize, usize)>) -> BTreeSet<String> {
    subs.iter()
        .map(|&(i, l)| show(t.slice(i, i + l - 1)))
        .collect()
}

fn paper_examples() -> Outcome {
    let t = text("aabaaabaabaa");
    for alg in CoverAlgorithm::ALL {
        let l = alg.run(&t).shortest_len;
        ensure(t.slice(1, l) == b"aabaa", || {
            format!("{} shortest cover {:?}", alg.name(), show(t.slice(1, l)))
        })?;
    }
    let want: BTreeSet<String> = ["aaba", "abaa"].map(String::from).into();
    for alg in SeedAlgorithm::ALL {
        let all = expand(&t, &alg.run(&t).packages, EXPAND_LIMIT).map_err(|e| e.to_string())?;
        let min = all.iter().map(|s| s.1).min().unwrap();
        let shortest: BTreeSet<_> = all.iter().copied().filter(|s| s.1 == min).collect();
        ensure(strings(&t, &shortest) == want, || {
            format!("{} shortest seeds {:?}", alg.name(), strings(&t, &shortest))
        })?;
    }

    let t = text("aabcab");
    let pkg = expand(&t, &[Package::new(2, 4, 5)], EXPAND_LIMIT).map_err(|e| e.to_string())?;
    let want: BTreeSet<String> = ["abc", "abca"].map(String::from).into();
    ensure(strings(&t, &pkg) == want, || {
        format!("package (2,4,5) gave {:?}", strings(&t, &pkg))
    })?;

    let mut dsu = ChangeListDsu::new(8);
    let mut changes = Vec::new();
    for x in [1, 2, 3, 5, 4, 8] {
        dsu.make_set(x).map_err(|e| e.to_string())?;
    }
    for (a, b) in [(1, 2), (1, 3), (1, 5), (4, 8)] {
        dsu.union(a, b, &mut changes).map_err(|e| e.to_string())?;
    }
    dsu.union(1, 4, &mut changes).map_err(|e| e.to_string())?;
    ensure(changes == [(3, 4), (4, 5), (5, 8)], || {
        format!("change list {changes:?}")
    })?;

    let t = text("abababbaba");
    let cv = covered_count(&t, b"aba");
    ensure(cv == 8, || format!("aba covers {cv}"))?;
    let two = oracle::brute_lambda_covers(&t, 2, 2).map_err(|e| e.to_string())?;
    ensure(two.contains(&vec![b"ab".to_vec(), b"ba".to_vec()]), || {
        "{ab, ba} is not a minimal 2-cover".into()
    })?;
    Ok(
        "cover aabaa; seeds {aaba, abaa}; package {abc, abca}; change list; cv(aba)=8; {ab,ba}"
            .into(),
    )
}

/// Random over sigma 2/4/26, periodic or planted, `n` in `1..=max_n`.
fn mixed_text(rng: &mut ChaCha8Rng, k: usize, max_n: usize) -> Text {
    let n = rng.gen_range(1..=max_n);
    let sigma = [2, 4, 26][rng.gen_range(0..3)];
    let spec = match k % 5 {
        0 => GenSpec::new(GenKind::Random, n).sigma(2),
        1 => GenSpec::new(GenKind::Random, n).sigma(4),
        2 => GenSpec::new(GenKind::Random, n).sigma(26),
        3 => GenSpec::new(GenKind::Periodic, n)
            .sigma(sigma)
            .period(rng.gen_range(1..=n.div_ceil(2))),
        _ => GenSpec::new(GenKind::PlantedCover, n)
            .sigma(sigma)
            .cover_len(rng.gen_range(1..=n)),
    };
    gen(&spec.seed(rng.gen())).unwrap()
}

fn cover_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0e5);
    let cases = 1200;
    let mut quasi = 0;
    for k in 0..cases {
        let t = mixed_text(&mut rng, k, 512);
        let want = oracle::brute_all_covers(&t).map_err(|e| e.to_string())?;
        let shortest = *want.first().unwrap();
        quasi += usize::from(shortest < t.len());
        for alg in CoverAlgorithm::ALL {
            let r = alg.run(&t);
            ensure(r.shortest_len == shortest, || {
                format!(
                    "{} on {:?}: {} != {shortest}",
                    alg.name(),
                    show(&t),
                    r.shortest_len
                )
            })?;
            if let Some(online) = &r.online_shortest {
                ensure(online.last() == Some(&shortest), || {
                    format!("bres[n] on {:?}", show(&t))
                })?;
            }
            if let Some(all) = r.all_cover_lens {
                let got: BTreeSet<usize> = all.into_iter().collect();
                ensure(got == want, || {
                    format!("{} cover set on {:?}", alg.name(), show(&t))
                })?;
            }
        }
    }
    Ok(format!("{cases} strings, {quasi} quasiperiodic"))
}

fn seed_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cases = 360;
    let mut total = 0;
    for k in 0..cases {
        let n = rng.gen_range(6..=200);
        let sigma = [2, 3, 4][k / 6 % 3];
        let spec = match k % 6 {
            0..=2 => GenSpec::new(GenKind::Random, n).sigma([2, 3, 4][k % 3]),
            3 => GenSpec::new(GenKind::Periodic, n).sigma(sigma).period(2),
            4 => GenSpec::new(GenKind::Periodic, n)
                .sigma(sigma)
                .period(n / 3),
            _ => GenSpec::new(GenKind::Periodic, n)
                .sigma(sigma)
                .period(2 * n / 3),
        };
        let t = gen(&spec.seed(rng.gen())).map_err(|e| e.to_string())?;
        let want = oracle::brute_all_seeds(&t).map_err(|e| e.to_string())?;
        total += want.len();
        for alg in SeedAlgorithm::ALL {
            let got = expand(&t, &alg.run(&t).packages, EXPAND_LIMIT).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{} on {:?}", alg.name(), show(&t)))?;
        }
    }
    Ok(format!("{cases} strings, {total} seeds"))
}

/// Overhang characterization, superstring search and the per-substring
/// test all describe the same set.
fn seed_tiers() -> Outcome {
    let mut strings = 0;
    for n in 1..=14usize {
        for bits in 0u32..1 << n {
            let t: Vec<u8> = (0..n)
                .map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' })
                .collect();
            let direct = oracle::brute_all_seeds(&t).map_err(|e| e.to_string())?;
            let sup = oracle::brute_seeds_superstring(&t).map_err(|e| e.to_string())?;
            ensure(direct == sup, || {
                format!("overhang vs superstring on {:?}", show(&t))
            })?;
            let mut seen = BTreeSet::new();
            for i in 0..n {
                for l in 1..=n - i {
                    let s = &t[i..i + l];
                    if seen.insert(s)
                        && oracle::brute_is_seed(&t, s) != direct.contains(&(i + 1, l))
                    {
                        return Err(format!("is_seed({:?}) on {:?}", show(s), show(&t)));
                    }
                }
            }
            strings += 1;
        }
    }
    Ok(format!("{strings} binary strings, n <= 14"))
}

fn gap_of(agg: Option<&MaxgapAgg>) -> GapValue {
    agg.map_or(GapValue::Unbounded, MaxgapAgg::maxgap)
}

fn jst_schedules() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x757);
    let schedules = 10_000;
    let mut joins = 0u64;
    for _ in 0..schedules {
        // Mostly small forests, with enough near the top of the range.
        let n = if rng.gen_bool(0.1) {
            rng.gen_range(512..=1024)
        } else {
            rng.gen_range(1..=128)
        };
        let mut forest = JstForest::<MaxgapAgg>::new(n, ());
        let mut trees: Vec<(Jst, BTreeSet<usize>)> = Vec::new();
        for p in 1..=n {
            if rng.gen_bool(0.8) {
                trees.push((
                    forest.singleton(p).map_err(|e| e.to_string())?,
                    BTreeSet::from([p]),
                ));
            }
        }
        if rng.gen_bool(0.1) {
            trees.push((forest.empty(), BTreeSet::new()));
        }
        while trees.len() > 1 {
            let (a, mut sa) = trees.swap_remove(rng.gen_range(0..trees.len()));
            let (b, mut sb) = trees.swap_remove(rng.gen_range(0..trees.len()));
            let j = forest.join(a, b).map_err(|e| e.to_string())?;
            sa.append(&mut sb);
            let root = forest.root(&j);
            let want = oracle::brute_maxgap(&sa);
            ensure(gap_of(root) == want, || {
                format!("maxgap after join, n={n}: {:?} != {want:?}", gap_of(root))
            })?;
            if let Some(r) = root {
                ensure(
                    Some(&(r.min as usize)) == sa.first() && Some(&(r.max as usize)) == sa.last(),
                    || format!("min/max after join, n={n}"),
                )?;
            }
            joins += 1;
            trees.push((j, sa));
        }
    }
    Ok(format!("{schedules} schedules, {joins} joins"))
}

fn jst_update_bound() -> Outcome {
    let n = 1usize << 20;
    let bound = 4 * n as u64 * 20;
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0);
    let mut report = Vec::new();

    // Fully interleaved halves at every level.
    let mut forest = JstForest::<MaxgapAgg>::new(n, ());
    let mut trees: Vec<Jst> = (1..=n).map(|p| forest.singleton(p).unwrap()).collect();
    while trees.len() > 1 {
        let half = trees.len() / 2;
        let hi = trees.split_off(half);
        trees = trees
            .into_iter()
            .zip(hi)
            .map(|(a, b)| forest.join(a, b).unwrap())
            .collect();
    }
    ensure(
        gap_of(forest.root(&trees[0])) == GapValue::Finite(1),
        || "interleaved root".into(),
    )?;
    report.push(("interleaved", forest.update_count()));

    // Random pairs.
    let mut forest = JstForest::<MaxgapAgg>::new(n, ());
    let mut trees: Vec<Jst> = (1..=n).map(|p| forest.singleton(p).unwrap()).collect();
    while trees.len() > 1 {
        let a = trees.swap_remove(rng.gen_range(0..trees.len()));
        let b = trees.swap_remove(rng.gen_range(0..trees.len()));
        trees.push(forest.join(a, b).unwrap());
    }
    report.push(("random pairs", forest.update_count()));

    // One growing tree, positions in random order.
    let mut order: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut forest = JstForest::<MaxgapAgg>::new(n, ());
    let mut acc = forest.empty();
    for p in order {
        let s = forest.singleton(p).unwrap();
        acc = forest.join(acc, s).unwrap();
    }
    report.push(("sequential", forest.update_count()));

    let detail = report
        .iter()
        .map(|(k, c)| format!("{k} {c}"))
        .collect::<Vec<_>>()
        .join(", ");
    ensure(report.iter().all(|&(_, c)| c <= bound), || {
        format!("{detail} exceeds {bound}")
    })?;
    Ok(format!("N=2^20: {detail} <= {bound}"))
}

fn change_lists() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1);
    let sequences = 1000;
    let mut unions = 0;
    for _ in 0..sequences {
        let n = rng.gen_range(1..=256);
        let mut dsu = ChangeListDsu::new(n);
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        for p in 1..=n {
            dsu.make_set(p).map_err(|e| e.to_string())?;
            sets.push(BTreeSet::from([p]));
        }
        let mut changes = Vec::new();
        while sets.len() > 1 {
            let a = sets.swap_remove(rng.gen_range(0..sets.len()));
            let b = sets.swap_remove(rng.gen_range(0..sets.len()));
            // Any member names its set.
            let ea = *a.iter().nth(rng.gen_range(0..a.len())).unwrap();
            let eb = *b.iter().nth(rng.gen_range(0..b.len())).unwrap();
            dsu.union(ea, eb, &mut changes).map_err(|e| e.to_string())?;
            ensure(changes == oracle::brute_change_list(&a, &b), || {
                format!("union of {a:?} and {b:?}")
            })?;
            unions += 1;
            sets.push(a.union(&b).copied().collect());
        }
    }
    Ok(format!("{sequences} sequences, {unions} unions"))
}

fn partial_cover_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1fa);
    let cases = 100;
    let mut nodes = 0;
    for k in 0..cases {
        let n = rng.gen_range(1..=200);
        let sigma = rng.gen_range(2..=4);
        let spec = match k % 3 {
            0 => GenSpec::new(GenKind::Random, n),
            1 => GenSpec::new(GenKind::Periodic, n).period(rng.gen_range(1..=n.div_ceil(2))),
            _ => GenSpec::new(GenKind::PlantedCover, n).cover_len(rng.gen_range(1..=n)),
        };
        let t = gen(&spec.sigma(sigma).seed(rng.gen())).map_err(|e| e.to_string())?;
        let cst = Cst::build(&t);
        for c in cst.nodes() {
            let (start, len) = cst.substring_of(c);
            let want = oracle::brute_cv_delta(&t, t.slice(start, start + len - 1));
            ensure((c.cv, c.delta) == want, || {
                format!("cv/delta of ({start}, {len}) on {:?}", show(&t))
            })?;
        }
        nodes += cst.node_count();
        let want = oracle::brute_partial_cover_table(&t).map_err(|e| e.to_string())?;
        let table = all_partial_covers(&cst);
        ensure(table.len() == t.len(), || {
            format!("table size on {:?}", show(&t))
        })?;
        for e in &table {
            ensure(e.length == want[e.alpha], || {
                format!(
                    "alpha {} on {:?}: {} != {}",
                    e.alpha,
                    show(&t),
                    e.length,
                    want[e.alpha]
                )
            })?;
            ensure(
                covered_count(
                    &t,
                    t.slice(e.witness_start, e.witness_start + e.witness_len - 1),
                ) >= e.alpha,
                || format!("witness for alpha {} on {:?}", e.alpha, show(&t)),
            )?;
        }
    }
    Ok(format!("{cases} strings, {nodes} CST nodes"))
}

fn table8_length() -> usize {
    let t = text("abababbaba");
    all_partial_covers(&Cst::build(&t))
        .into_iter()
        .find(|e| e.alpha == 8)
        .expect("alpha 8 in table")
        .length
}

fn partial_cover_table8() -> Outcome {
    let t = text("abababbaba");
    let got = table8_length();
    let oracle_len = oracle::brute_partial_cover_table(&t).map_err(|e| e.to_string())?[8];
    let query = partial_covers_for_alpha(&Cst::build(&t), 8)
        .map_err(|e| e.to_string())?
        .length;
    ensure(got == 3, || {
        format!(
            "expected length 3, table gives {got} (brute force {oracle_len}, alpha query {query}; \
             \"ab\" covers {} positions)",
            covered_count(&t, b"ab")
        )
    })?;
    Ok("table[8] = 3".into())
}

/// Minimal 2-covers of `(a^m b)^2 a^m` per length, from an independent
/// enumerator (`tools/lambda_goldens.py`).
const LAMBDA_GOLDENS: &[(usize, usize, usize)] = &[
    (3, 2, 2),
    (3, 3, 3),
    (3, 4, 1),
    (3, 5, 1),
    (4, 2, 2),
    (4, 3, 3),
    (4, 4, 4),
    (4, 5, 1),
    (4, 6, 1),
    (5, 2, 2),
    (5, 3, 3),
    (5, 4, 4),
    (5, 5, 5),
    (5, 6, 1),
    (5, 7, 1),
    (5, 8, 1),
];

fn lambda_family() -> Outcome {
    let mut checked = 0;
    for m in 3..=5usize {
        let a = |k: usize| "a".repeat(k);
        let s = format!("{}b{}b{}", a(m), a(m), a(m));
        let t = s.as_bytes();
        let n = t.len();
        for k in (2..n).filter(|k| 2 * k < n) {
            let covers = oracle::brute_lambda_covers(t, 2, k).map_err(|e| e.to_string())?;
            let golden = LAMBDA_GOLDENS
                .iter()
                .find(|g| g.0 == m && g.1 == k)
                .ok_or_else(|| format!("no golden for m={m} k={k}"))?
                .2;
            ensure(covers.len() == golden, || {
                format!("m={m} k={k}: {} != golden {golden}", covers.len())
            })?;
            // The family a^i b a^j with a^(i+j+1), i + j = k - 1.
            let sum = k - 1;
            if sum < m {
                for i in 0..=sum {
                    let mut member = vec![
                        a(sum + 1).into_bytes(),
                        format!("{}b{}", a(i), a(sum - i)).into_bytes(),
                    ];
                    member.sort();
                    ensure(covers.contains(&member), || {
                        format!("m={m}: a^{i} b a^{} missing", sum - i)
                    })?;
                }
            }
            if 2 * sum >= m && sum < m {
                ensure(2 * covers.len() >= m, || {
                    format!("m={m} k={k}: {} below m/2", covers.len())
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (m, k) cells match goldens and the m/2 bound"
    ))
}

/// Median seconds per (algorithm, n) for one family on random text.
fn scaling_family(
    family: Family,
    sizes: &[usize],
    rounds: usize,
) -> Result<BTreeMap<(String, usize), f64>, String> {
    let mut cfg = BenchConfig::new(family);
    cfg.sizes = sizes.to_vec();
    cfg.sigmas = vec![4];
    // One trial per size per round, so load that comes and goes during the
    // sweep hits every size alike.
    cfg.trials = 1;
    cfg.rounds = rounds;
    cfg.warmup = 1;
    // Millisecond runs are dominated by timer and scheduler noise.
    cfg.min_trial_seconds = 0.05;
    cfg.seed = 0x5ca1e;
    let out = run_bench(&cfg, |_| Ok(())).map_err(|e| e.to_string())?;
    if !out.mismatches.is_empty() {
        return Err(format!("checksum mismatch: {:?}", out.mismatches));
    }
    Ok(medians(&out.rows)
        .into_iter()
        .map(|m| ((m.algorithm, m.n), m.median))
        .collect())
}

fn scaling_smoke() -> Outcome {
    let sizes: Vec<usize> = (16..=20).map(|k| 1usize << k).collect();
    let mut worst = (0.0f64, String::new());
    let mut bad = Vec::new();
    for family in [Family::Covers, Family::Seeds, Family::Pcover] {
        let med = scaling_family(family, &sizes, 5)?;
        for alg in family.algorithms() {
            let times: Vec<f64> = sizes.iter().map(|&n| med[&(alg.to_string(), n)]).collect();
            let ratios: Vec<f64> = times.windows(2).map(|w| w[1] / w[0]).collect();
            println!(
                "  {alg}: {} | ratios {}",
                times
                    .iter()
                    .map(|t| format!("{t:.4}s"))
                    .collect::<Vec<_>>()
                    .join(" "),
                ratios
                    .iter()
                    .map(|r| format!("{r:.2}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for (i, &r) in ratios.iter().enumerate() {
                if r > worst.0 {
                    worst = (r, format!("{alg} at 2^{}", 17 + i));
                }
                if r > 3.0 {
                    bad.push(format!("{alg} 2^{}->2^{}: {r:.2}", 16 + i, 17 + i));
                }
            }
        }
    }
    ensure(bad.is_empty(), || {
        format!("ratio above 3: {}", bad.join(", "))
    })?;
    Ok(format!("worst ratio {:.2} ({})", worst.0, worst.1))
}

/// Prints timing trends over periodic inputs; informational only.
fn scaling_trends() -> Outcome {
    let mut cfg = BenchConfig::new(Family::Covers);
    cfg.algorithms = vec!["bres".into()];
    cfg.sizes = vec![1 << 20];
    cfg.kinds = vec![GenKind::Periodic];
    cfg.sigmas = vec![4];
    cfg.periods = vec![1 << 2, 1 << 6, 1 << 10, 1 << 14, 1 << 18];
    cfg.trials = 5;
    let rows = medians(&run_bench(&cfg, |_| Ok(())).map_err(|e| e.to_string())?.rows);
    let bres: Vec<(usize, f64)> = rows.iter().map(|m| (m.period, m.median)).collect();
    let falling = bres.windows(2).all(|w| w[1].1 <= w[0].1 * 1.1);
    println!(
        "  INFO bres by period (n=2^20): {} -> {}",
        bres.iter()
            .map(|(p, t)| format!("p={p} {t:.4}s"))
            .collect::<Vec<_>>()
            .join(", "),
        if falling {
            "decreasing"
        } else {
            "not monotone"
        }
    );

    let mut cfg = BenchConfig::new(Family::Seeds);
    cfg.algorithms = vec!["kkrrw".into()];
    cfg.sizes = vec![1 << 18];
    cfg.kinds = vec![GenKind::Periodic];
    cfg.sigmas = vec![4];
    cfg.period_fractions = vec![0.5, 0.6, 0.64, 0.66, 0.68, 0.72, 0.8];
    cfg.trials = 3;
    let rows = medians(&run_bench(&cfg, |_| Ok(())).map_err(|e| e.to_string())?.rows);
    let kk: Vec<(usize, f64)> = rows.iter().map(|m| (m.period, m.median)).collect();
    let n = (1 << 18) as f64;
    let drop = kk
        .windows(2)
        .map(|w| (w[0].1 / w[1].1, w[1].0))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    println!(
        "  INFO kkrrw by period (n=2^18): {} ; largest drop x{:.2} at p/n={:.3}",
        kk.iter()
            .map(|(p, t)| format!("{:.2}n {t:.4}s", *p as f64 / n))
            .collect::<Vec<_>>()
            .join(", "),
        drop.0,
        drop.1 as f64 / n
    );
    Ok("trends printed".into())
}

/// Reports the coverage of "journal" in a user-supplied XML prefix.
fn corpus() -> Outcome {
    let Ok(path) = std::env::var("QLAB_CORPUS") else {
        return Ok("QLAB_CORPUS not set, skipped".into());
    };
    let bytes = std::fs::read(&path).map_err(|e| format!("{path}: {e}"))?;
    let t = Text::new(bytes).map_err(|e| e.to_string())?;
    let n = t.len();
    let share = |c: usize| 100.0 * c as f64 / n as f64;
    let cv = covered_count(&t, b"journal");
    let cst = Cst::build(&t);
    let reported = partial_covers_above(&cst, cv.max(1))
        .map_err(|e| e.to_string())?
        .into_iter()
        .any(|r| (r.lo..=r.hi).contains(&7) && t.slice(r.start, r.start + 6) == b"journal");
    let near = (share(cv) - 7.5).abs() <= 1.0;
    Ok(format!(
        "n={n}: \"journal\" covers {:.2}% ({}), {} in threshold mode",
        share(cv),
        if near {
            "within 7.5 +- 1"
        } else {
            "outside 7.5 +- 1, not gating"
        },
        if reported { "reported" } else { "not reported" }
    ))
}

#[test]
fn acceptance() {
    let mut s = Suite::new();
    let secs = Duration::from_secs;
    s.check("paper_examples", secs(1), paper_examples);
    s.check("cover_agreement", secs(30), cover_agreement);
    s.check("seed_agreement", secs(300), || {
        let a = seed_agreement()?;
        let b = seed_tiers()?;
        Ok(format!("{a}; tiers: {b}"))
    });
    s.check("jst", secs(60), || {
        let a = jst_schedules()?;
        let b = jst_update_bound()?;
        let c = change_lists()?;
        Ok(format!("{a}; {b}; {c}"))
    });
    s.check("partial_covers", secs(120), partial_cover_agreement);
    s.check("partial_covers_table8", secs(1), partial_cover_table8);
    s.check("lambda_family", secs(60), lambda_family);
    s.check("scaling_smoke", secs(600), scaling_smoke);
    s.check("scaling_trends", secs(300), scaling_trends);
    s.check("corpus", secs(600), corpus);
    assert!(s.failed.is_empty(), "failed criteria: {:?}", s.failed);
}

/// The stated expectation for alpha = 8 on "abababbaba". The definitions give
/// 2 ("ab" covers 8 positions), so this stays ignored.
#[test]
#[ignore = "expectation contradicts the definition of partial covers; the answer is 2"]
fn table8_is_three_strict() {
    assert_eq!(table8_length(), 3);
}

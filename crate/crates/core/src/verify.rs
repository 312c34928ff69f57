//! Oracle-equivalence suite behind `qlab verify`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::covers::CoverAlgorithm;
use crate::error::Result;
use crate::generators::{gen, GenKind, GenSpec};
use crate::jst::{maxgap_of_groups, ChangeListDsu};
use crate::oracle::{self, OracleBudget};
use crate::partial_covers::{all_partial_covers, Cst};
use crate::seeds::{expand, SeedAlgorithm, EXPAND_LIMIT};
use crate::text::Text;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub budget: OracleBudget,
    /// Cases per check.
    pub cases: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            budget: OracleBudget::default(),
            cases: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    /// Up to ten failing inputs with a description.
    pub failures: Vec<String>,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

/// A random, periodic or planted text of length `1..=max_n` over 2 to 4 letters.
fn case_text(seed: u64, max_n: usize) -> Result<Text> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n.max(1));
    let sigma = rng.gen_range(2..=4);
    let spec = match rng.gen_range(0..3) {
        0 => GenSpec::new(GenKind::Random, n),
        1 => GenSpec::new(GenKind::Periodic, n).period(rng.gen_range(1..=n.div_ceil(2))),
        _ => GenSpec::new(GenKind::PlantedCover, n).cover_len(rng.gen_range(1..=n)),
    };
    gen(&spec.sigma(sigma).seed(rng.gen()))
}

fn run_check(
    name: &'static str,
    cfg: &VerifyConfig,
    salt: u64,
    case: impl Fn(u64) -> std::result::Result<(), String> + Sync,
) -> CheckResult {
    let mut failures: Vec<String> = (0..cfg.cases as u64)
        .into_par_iter()
        .filter_map(|k| {
            case(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9) ^ k.wrapping_mul(0x2545_f491)).err()
        })
        .collect();
    let failed = failures.len();
    failures.truncate(10);
    CheckResult {
        name,
        cases: cfg.cases,
        failures,
        failed,
    }
}

fn show(t: &Text) -> String {
    String::from_utf8_lossy(t).into_owned()
}

fn covers_case(t: &Text, budget: &OracleBudget) -> std::result::Result<(), String> {
    let want = oracle::brute_all_covers_with(t, budget).map_err(|e| e.to_string())?;
    let shortest = *want.first().expect("T covers itself");
    for alg in CoverAlgorithm::ALL {
        let r = alg.run(t);
        if r.shortest_len != shortest {
            return Err(format!(
                "{} on {:?}: {} != {}",
                alg.name(),
                show(t),
                r.shortest_len,
                shortest
            ));
        }
        if let Some(all) = r.all_cover_lens {
            if all.into_iter().collect::<BTreeSet<_>>() != want {
                return Err(format!("{} cover set on {:?}", alg.name(), show(t)));
            }
        }
    }
    Ok(())
}

fn seeds_case(t: &Text, budget: &OracleBudget) -> std::result::Result<(), String> {
    let want = oracle::brute_all_seeds_with(t, budget).map_err(|e| e.to_string())?;
    for alg in SeedAlgorithm::ALL {
        let got = expand(t, &alg.run(t).packages, EXPAND_LIMIT).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{} on {:?}", alg.name(), show(t)));
        }
    }
    Ok(())
}

fn pcover_case(t: &Text) -> std::result::Result<(), String> {
    let want = oracle::brute_partial_cover_table(t).map_err(|e| e.to_string())?;
    let cst = Cst::build(t);
    for c in cst.nodes() {
        let (start, len) = cst.substring_of(c);
        if oracle::brute_cv_delta(t, &t[start - 1..start - 1 + len]) != (c.cv, c.delta) {
            return Err(format!("cv/delta of ({start}, {len}) on {:?}", show(t)));
        }
    }
    for e in all_partial_covers(&cst) {
        if e.length != want[e.alpha] {
            return Err(format!(
                "alpha {} on {:?}: {} != {}",
                e.alpha,
                show(t),
                e.length,
                want[e.alpha]
            ));
        }
    }
    Ok(())
}

fn jst_case(seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=256);
    let k = rng.gen_range(1..=8);
    let mut groups = vec![Vec::new(); k];
    for p in 1..=n {
        groups[rng.gen_range(0..k)].push(p);
    }
    for g in &mut groups {
        // Join order should not matter.
        for i in (1..g.len()).rev() {
            g.swap(i, rng.gen_range(0..=i));
        }
    }
    let got = maxgap_of_groups(n, &groups).map_err(|e| e.to_string())?;
    for (g, v) in groups.iter().zip(got) {
        if oracle::brute_maxgap(&g.iter().copied().collect()) != v {
            return Err(format!("maxgap of {g:?}"));
        }
    }

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
        let (ea, eb) = (*a.first().unwrap(), *b.first().unwrap());
        dsu.union(ea, eb, &mut changes).map_err(|e| e.to_string())?;
        if changes != oracle::brute_change_list(&a, &b) {
            return Err(format!("change list of {a:?} and {b:?}"));
        }
        sets.push(a.union(&b).copied().collect());
    }
    Ok(())
}

/// Runs every check; inputs are capped well below the oracle budgets so the
/// suite finishes in seconds.
pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let b = cfg.budget;
    let checks = vec![
        run_check("covers", cfg, 1, |s| {
            covers_case(
                &case_text(s, b.covers.min(256)).map_err(|e| e.to_string())?,
                &b,
            )
        }),
        run_check("seeds", cfg, 2, |s| {
            seeds_case(
                &case_text(s, b.seeds.min(80)).map_err(|e| e.to_string())?,
                &b,
            )
        }),
        run_check("seed_tiers", cfg, 3, |s| {
            let t = case_text(s, b.superstring.min(12)).map_err(|e| e.to_string())?;
            let direct = oracle::brute_all_seeds_with(&t, &b).map_err(|e| e.to_string())?;
            let sup = oracle::brute_seeds_superstring_with(&t, &b).map_err(|e| e.to_string())?;
            if direct == sup {
                Ok(())
            } else {
                Err(format!("oracle tiers disagree on {:?}", show(&t)))
            }
        }),
        run_check("partial_covers", cfg, 4, |s| {
            pcover_case(&case_text(s, 120).map_err(|e| e.to_string())?)
        }),
        run_check("jst", cfg, 5, jst_case),
    ];
    VerifyReport { checks }
}

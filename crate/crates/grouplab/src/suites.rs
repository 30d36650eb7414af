//! Batch verification suites over the built-in corpus.

use crate::aut::{automorphism_group, AutGroup};
use crate::bounds::{
    check_dl_gadget, check_external_bounds, check_gtf_properties, check_main_theo,
    check_thresholds, BoundCheck, BoundStatus,
};
use crate::characters::{character_table_with_prime_skip, check_character_sqrt_identity};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::group::table::GroupTable;
use crate::power::{
    check_func_gadget, check_l_e, check_l_three, check_l_two, check_non_shift, check_shift_cor,
    check_shift_two_prop, LemmaCheck,
};
use crate::report::CheckReport;
use rayon::prelude::*;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Characters,
    Thresholds,
    Gtf,
    Bounds,
    MainTheo,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "characters" => Ok(Suite::Characters),
            "thresholds" => Ok(Suite::Thresholds),
            "gtf" => Ok(Suite::Gtf),
            "bounds" => Ok(Suite::Bounds),
            "mainTheo" | "maintheo" => Ok(Suite::MainTheo),
            "all" => Ok(Suite::All),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0 }
    }
}

fn report(group: &str, check: &str, status: BoundStatus, witness: Option<String>, ms: u64) -> CheckReport {
    CheckReport {
        group: group.to_string(),
        check: check.to_string(),
        status,
        witness,
        elapsed_ms: ms,
    }
}

fn from_lemmas(group: &str, checks: Vec<LemmaCheck>, ms: u64) -> Vec<CheckReport> {
    checks
        .into_iter()
        .map(|c| {
            let status = if c.ok {
                BoundStatus::Pass
            } else {
                BoundStatus::Fail
            };
            report(group, &c.name, status, c.witness, ms)
        })
        .collect()
}

fn from_bounds(group: &str, checks: Vec<BoundCheck>, ms: u64) -> Vec<CheckReport> {
    checks
        .into_iter()
        .map(|c| report(group, &c.name, c.status, Some(c.detail), ms))
        .collect()
}

fn skipped(group: &str, check: &str, err: &Error) -> Vec<CheckReport> {
    vec![report(
        group,
        check,
        BoundStatus::Skipped,
        Some(err.to_string()),
        0,
    )]
}

fn lemma_suite(name: &str, g: &GroupTable, aut: &AutGroup) -> Vec<CheckReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    checks.extend(check_l_e(g, aut));
    match check_l_two(g, aut) {
        Ok(c) => checks.extend(c),
        Err(e) => return skipped(name, "lTwoLem", &e),
    }
    match check_l_three(g, aut) {
        Ok(c) => checks.extend(c),
        Err(e) => return skipped(name, "lThreeLem", &e),
    }
    checks.extend(check_shift_cor(g, aut));
    checks.extend(check_shift_two_prop(g, aut));
    if g.center().is_trivial() && !g.is_solvable() {
        checks.extend(check_non_shift(g, aut));
    }
    let ms = start.elapsed().as_millis() as u64;
    from_lemmas(name, checks, ms)
}

fn character_suite(name: &str, g: &GroupTable) -> Vec<CheckReport> {
    let start = Instant::now();
    let mut out = Vec::new();
    for skip in [0usize, 1] {
        let check_name = format!("character sqrt identity (prime #{})", skip + 1);
        match character_table_with_prime_skip(g, skip) {
            Ok(t) => {
                let status = match t.verify().and_then(|_| check_character_sqrt_identity(g, &t)) {
                    Ok(true) => BoundStatus::Pass,
                    Ok(false) => BoundStatus::Fail,
                    Err(e) => {
                        out.push(report(
                            name,
                            &check_name,
                            BoundStatus::Skipped,
                            Some(e.to_string()),
                            0,
                        ));
                        continue;
                    }
                };
                let ms = start.elapsed().as_millis() as u64;
                out.push(report(
                    name,
                    &check_name,
                    status,
                    Some(format!("p = {}", t.prime)),
                    ms,
                ));
            }
            Err(e) => out.push(report(
                name,
                &check_name,
                BoundStatus::Skipped,
                Some(e.to_string()),
                0,
            )),
        }
    }
    out
}

fn run_entry(suite: Suite, entry: &CorpusEntry) -> Vec<CheckReport> {
    let name = &entry.name;
    let g = &entry.table;
    let mut out = Vec::new();

    let needs_aut = !matches!(suite, Suite::Characters);
    let aut = if needs_aut {
        match automorphism_group(g) {
            Ok(a) => Some(a),
            Err(e) => {
                return skipped(name, "automorphism group", &e);
            }
        }
    } else {
        None
    };

    if matches!(suite, Suite::Lemmas | Suite::All) {
        out.extend(lemma_suite(name, g, aut.as_ref().unwrap()));
    }
    if matches!(suite, Suite::Characters | Suite::All) {
        out.extend(character_suite(name, g));
    }
    if matches!(suite, Suite::Thresholds | Suite::All) {
        let start = Instant::now();
        match check_thresholds(g, aut.as_ref().unwrap()) {
            Ok(c) => out.extend(from_bounds(name, c, start.elapsed().as_millis() as u64)),
            Err(e) => out.extend(skipped(name, "thresholds", &e)),
        }
    }
    if matches!(suite, Suite::Gtf | Suite::All) {
        let start = Instant::now();
        let aut = aut.as_ref().unwrap();
        let mut checks = Vec::new();
        let mut failed = false;
        match check_gtf_properties(g, aut) {
            Ok(c) => checks.extend(c),
            Err(e) => {
                out.extend(skipped(name, "gtf", &e));
                failed = true;
            }
        }
        if !failed {
            match check_dl_gadget(g, aut) {
                Ok(c) => checks.extend(c),
                Err(e) => out.extend(skipped(name, "dlBoundLem", &e)),
            }
            let ms = start.elapsed().as_millis() as u64;
            out.extend(from_bounds(name, checks, ms));
            out.extend(from_lemmas(name, check_func_gadget(g, aut), ms));
        }
    }
    if matches!(suite, Suite::Bounds | Suite::All) {
        let start = Instant::now();
        let almost_simple = entry.tags.contains("simple") && !entry.tags.contains("abelian");
        match check_external_bounds(g, almost_simple) {
            Ok(c) => out.extend(from_bounds(name, c, start.elapsed().as_millis() as u64)),
            Err(e) => out.extend(skipped(name, "external bounds", &e)),
        }
    }
    if matches!(suite, Suite::MainTheo | Suite::All) {
        let start = Instant::now();
        match check_main_theo(g, aut.as_ref().unwrap()) {
            Ok(c) => out.extend(from_bounds(name, c, start.elapsed().as_millis() as u64)),
            Err(e) => out.extend(skipped(name, "mainTheo", &e)),
        }
    }
    out
}

/// Run a suite over the corpus, in parallel over entries, with output in
/// corpus order.
pub fn run_suite(suite: Suite, corpus: &[CorpusEntry], _options: &SuiteOptions) -> Vec<CheckReport> {
    corpus
        .par_iter()
        .map(|entry| run_entry(suite, entry))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

//! End-to-end acceptance checks, one printed pass/fail line per criterion.

use grouplab::aut::{automorphism_group, inner_automorphism, Automorphism};
use grouplab::bounds::{check_maxsqrt_po_bound, e0, e1, log_out, BoundStatus};
use grouplab::characters::{character_table_with_prime_skip, check_character_sqrt_identity};
use grouplab::corpus::builtin_corpus;
use grouplab::ff::field::FqField;
use grouplab::ff::poly::lacunary_trials;
use grouplab::group::parse::parse_group;
use grouplab::group::perm::Perm;
use grouplab::power::{func_value, l_value};
use grouplab::psl2::{GammaL2Element, GammaL2Group};
use grouplab::suites::{run_suite, Suite, SuiteOptions};
use grouplab::wreath::{
    coordinate_condition, coset_survivor_fraction, ncycle_inversion_count, opportune_family,
    WreathElement, WreathGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn conclude(criterion: &str, ok: bool, detail: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let verdict = if ok && elapsed <= budget { "pass" } else { "FAIL" };
    println!(
        "acceptance {criterion}: {verdict} ({detail}; {} ms)",
        elapsed.as_millis()
    );
    assert!(ok, "{criterion} failed: {detail}");
    assert!(
        elapsed <= budget,
        "{criterion} exceeded budget: {} ms",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_01_exact_l2_values() {
    let start = Instant::now();
    let a4 = parse_group("A4").unwrap();
    let a4_aut = automorphism_group(&a4).unwrap();
    let (l2_a4, _) = l_value(&a4, &a4_aut, 2);
    let v4 = parse_group("V4").unwrap();
    let v4_aut = automorphism_group(&v4).unwrap();
    let (l2_v4, _) = l_value(&v4, &v4_aut, 2);
    conclude(
        "01 exact L2 values",
        l2_a4 == 5 && l2_v4 == 1,
        &format!("L2(A4) = {l2_a4}, L2(V4) = {l2_v4}"),
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_constants() {
    let start = Instant::now();
    let e0v = e0();
    let e1v = e1();
    let lo = log_out();
    let ok = (e0v - 0.8817).abs() < 1e-4 && (e1v - (-12.7650)).abs() < 1e-4
        && (lo - 0.2507106).abs() < 5e-8;
    conclude(
        "02 constants",
        ok,
        &format!("E0 = {e0v:.7}, E1 = {e1v:.6}, log_out = {lo:.7}"),
        start,
        Duration::from_millis(1),
    );
}

#[test]
fn criterion_03_character_sqrt_identity() {
    let start = Instant::now();
    let corpus = builtin_corpus(64).unwrap();
    let mut failures = Vec::new();
    for e in &corpus {
        for skip in [0usize, 1] {
            match character_table_with_prime_skip(&e.table, skip) {
                Ok(t) => {
                    if !(t.verify().is_ok()
                        && check_character_sqrt_identity(&e.table, &t).unwrap_or(false))
                    {
                        failures.push(format!("{} (prime #{})", e.name, skip + 1));
                    }
                }
                Err(err) => failures.push(format!("{} (prime #{}): {err}", e.name, skip + 1)),
            }
        }
    }
    conclude(
        "03 character sqrt identity",
        failures.is_empty(),
        &format!("{} groups, two primes each{}", corpus.len(), {
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {failures:?}")
            }
        }),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_04_lemma_suite() {
    let start = Instant::now();
    let corpus = builtin_corpus(64).unwrap();
    let reports = run_suite(Suite::Lemmas, &corpus, &SuiteOptions::default());
    let failures: Vec<_> = reports
        .iter()
        .filter(|r| matches!(r.status, BoundStatus::Fail | BoundStatus::Skipped))
        .map(|r| format!("{} :: {}", r.group, r.check))
        .collect();
    conclude(
        "04 lemma suite",
        failures.is_empty(),
        &format!("{} checks{}", reports.len(), {
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {failures:?}")
            }
        }),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_05_thresholds_with_d8_witness() {
    let start = Instant::now();
    let corpus = builtin_corpus(64).unwrap();
    let reports = run_suite(Suite::Thresholds, &corpus, &SuiteOptions::default());
    let failures = reports
        .iter()
        .filter(|r| matches!(r.status, BoundStatus::Fail))
        .count();
    let d8 = parse_group("D8").unwrap();
    let d8_aut = automorphism_group(&d8).unwrap();
    let (lm1, _) = l_value(&d8, &d8_aut, -1);
    let witness = lm1 == 6; // 3/4 of 8, brute-forced
    conclude(
        "05 thresholds",
        failures == 0 && witness,
        &format!(
            "{} checks, {failures} failures, L_-1(D8) = {lm1} = (3/4)*8",
            reports.len()
        ),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_06_func_gadget() {
    let start = Instant::now();
    let corpus = builtin_corpus(64).unwrap();
    let mut violations = Vec::new();
    for e in &corpus {
        let aut = match automorphism_group(&e.table) {
            Ok(a) => a,
            Err(err) => {
                violations.push(format!("{}: {err}", e.name));
                continue;
            }
        };
        let (func, _, _) = func_value(&e.table, &aut);
        let big = 4 * func > 3 * e.table.order();
        if big && !e.table.is_abelian() {
            violations.push(format!("{}: Func > (3/4)|G| but nonabelian", e.name));
        }
        let (_, dl) = e.table.derived_series();
        if let Some(dl) = dl {
            if dl >= 2 && big {
                violations.push(format!("{}: dl = {dl} but Func > (3/4)|G|", e.name));
            }
        }
    }
    conclude(
        "06 Func gadget",
        violations.is_empty(),
        &format!("{} groups{}", corpus.len(), {
            if violations.is_empty() {
                String::new()
            } else {
                format!("; violations: {violations:?}")
            }
        }),
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_07_po_bound_over_pgammal_tables() {
    let start = Instant::now();
    let cases = [(5u64, 60usize), (7, 168), (9, 360), (8, 504)];
    let mut ok = true;
    let mut details = Vec::new();
    for (q, s_order) in cases {
        let g = GammaL2Group::new(q).unwrap();
        let table = g.to_group_table().unwrap();
        let check = check_maxsqrt_po_bound(&table, s_order);
        if matches!(check.status, BoundStatus::Fail) {
            ok = false;
        }
        details.push(format!("q={q}: {}", check.detail));
    }
    conclude(
        "07 PO-bound maxsqrt(Aut(S)) <= |S|^E0",
        ok,
        &details.join("; "),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_lacunary_lemma() {
    let start = Instant::now();
    let cases = [(2u64, 8u32, 6u32), (3, 4, 3), (2, 4, 3)];
    let mut ok = true;
    let mut details = Vec::new();
    for (p, k, l) in cases {
        let field = FqField::new(p, k).unwrap();
        let rep = lacunary_trials(&field, l, 0.2, 200, 0x1acu64).unwrap();
        if rep.root_mismatches != 0
            || rep.max_reduced_degree as f64 > rep.degree_bound + 1e-9
        {
            ok = false;
        }
        details.push(format!(
            "q={}: {} trials, {} mismatches, max deg {} <= {:.2}",
            rep.q, rep.trials, rep.root_mismatches, rep.max_reduced_degree, rep.degree_bound
        ));
    }
    conclude(
        "08 lacunary lemma",
        ok,
        &details.join("; "),
        start,
        Duration::from_secs(30),
    );
}

fn random_gamma(g: &GammaL2Group, rng: &mut ChaCha8Rng) -> GammaL2Element {
    let q = g.q();
    loop {
        let (a, b, c, d) = (
            rng.gen_range(0..q),
            rng.gen_range(0..q),
            rng.gen_range(0..q),
            rng.gen_range(0..q),
        );
        let m = rng.gen_range(0..g.frobenius_degree());
        let f = g.field();
        if f.sub(f.mul(a, d), f.mul(b, c)) != 0 {
            return g.normalize(a, b, c, d, m);
        }
    }
}

#[test]
fn criterion_09_pgammal_formulas() {
    let start = Instant::now();
    let mut ok = true;
    let mut info = Vec::new();
    for q in [4u64, 5, 7, 8, 9] {
        let g = GammaL2Group::new(q).unwrap();
        let (_, k) = grouplab::ff::field::split_prime_power(q).unwrap();
        if g.order() != (q * q * q - q) * k as u64 {
            ok = false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xacc9 + q);
        for _ in 0..1000 {
            let x = random_gamma(&g, &mut rng);
            let y = random_gamma(&g, &mut rng);
            if g.cube(&x) != g.cube_generic(&x) || g.conj_apply(&x, &y) != g.conj_generic(&x, &y)
            {
                ok = false;
            }
        }
        let (l3, _) = g.l3_inner_max().unwrap();
        info.push(format!(
            "q={q}: L3_inner = {l3} vs q^(11/4) = {:.1} [info]",
            (q as f64).powf(2.75)
        ));
        if q == 4 {
            let table = g.to_group_table().unwrap();
            let aut = automorphism_group(&table).unwrap();
            let (brute, _) = l_value(&table, &aut, 3);
            if l3 != brute {
                ok = false;
            }
        }
    }
    conclude(
        "09 PGammaL2 formulas",
        ok,
        &info.join("; "),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_10_opportune_machinery() {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();

    // 1000 seeded random permutation pairs on n = 256.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bb1);
    let n = 256usize;
    for _ in 0..1000 {
        let mut im_a: Vec<u16> = (0..n as u16).collect();
        let mut im_b: Vec<u16> = (0..n as u16).collect();
        for i in (1..n).rev() {
            im_a.swap(i, rng.gen_range(0..=i));
            im_b.swap(i, rng.gen_range(0..=i));
        }
        let fam = opportune_family(
            &Perm::from_images(im_a).unwrap(),
            &Perm::from_images(im_b).unwrap(),
        );
        let m = fam.opportune.len();
        if fam.family.len() < (m + 15) / 16 {
            ok = false;
        }
        let mut seen = std::collections::BTreeSet::new();
        for o in &fam.family {
            for &j in o {
                if !seen.insert(j) {
                    ok = false;
                }
            }
        }
    }
    notes.push("opportune families ok".to_string());

    // coordinate_condition vs ambient cubing on 500 (beta, k) pairs.
    let s3 = parse_group("S3").unwrap();
    let w = WreathGroup::new(&s3, 2).unwrap();
    let elems = w.elements();
    let swap = Perm::parse_cycles("(1 2)", 2).unwrap();
    let ks: Vec<&WreathElement> = elems.iter().filter(|k| k.perm.is_identity()).collect();
    let mut checked = 0usize;
    'outer: for alpha in &elems {
        for beta in elems.iter().filter(|b| b.perm == swap) {
            if w.conj(alpha, beta) != w.cube(beta) {
                continue;
            }
            for k in &ks {
                let kb = w.mul(k, beta);
                let ambient = w.conj(alpha, &kb) == w.cube(&kb);
                if coordinate_condition(&w, alpha, beta, k).unwrap() != ambient {
                    ok = false;
                }
                checked += 1;
                if checked >= 500 {
                    break 'outer;
                }
            }
        }
    }
    if checked < 500 {
        ok = false;
    }
    notes.push(format!("{checked} coordinate pairs"));

    // ncycle inversion agreement for C2 and S3, n in {2, 3}.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c1f);
    for base_name in ["C2", "S3"] {
        let base = parse_group(base_name).unwrap();
        for nn in [2usize, 3] {
            for _ in 0..10 {
                let alphas: Vec<Automorphism> = (0..nn)
                    .map(|_| inner_automorphism(&base, rng.gen_range(0..base.order() as u32)))
                    .collect();
                match ncycle_inversion_count(&base, &alphas) {
                    Ok((count, _)) => {
                        if count > base.order() {
                            ok = false;
                        }
                    }
                    Err(_) => ok = false,
                }
            }
        }
    }
    notes.push("ncycle inversion ok".to_string());

    // coordinateEq3 solution counts over Alt5.
    let a5 = parse_group("A5").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa5a6);
    for _ in 0..100 {
        let kappa = rng.gen_range(0..60u32);
        let alpha = inner_automorphism(&a5, rng.gen_range(0..60));
        let beta = inner_automorphism(&a5, rng.gen_range(0..60));
        let rep = coset_survivor_fraction(&a5, &[kappa], &[alpha], &[beta]);
        if !rep.strict || rep.counts[0] > 59 {
            ok = false;
        }
    }
    notes.push("coset survivors <= 59".to_string());

    conclude(
        "10 opportune machinery",
        ok,
        &notes.join("; "),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_11_main_theorem() {
    let start = Instant::now();
    let corpus = builtin_corpus(64).unwrap();
    let reports = run_suite(Suite::MainTheo, &corpus, &SuiteOptions::default());
    let failures: Vec<_> = reports
        .iter()
        .filter(|r| matches!(r.status, BoundStatus::Fail | BoundStatus::Skipped))
        .map(|r| format!("{} :: {}", r.group, r.check))
        .collect();
    let infos = reports
        .iter()
        .filter(|r| matches!(r.status, BoundStatus::Info))
        .count();
    conclude(
        "11 mainTheo(1)(2)",
        failures.is_empty(),
        &format!("{} checks, {infos} info rows{}", reports.len(), {
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {failures:?}")
            }
        }),
        start,
        Duration::from_secs(600),
    );
}

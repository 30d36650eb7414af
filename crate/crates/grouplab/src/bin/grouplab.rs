use clap::{Parser, Subcommand, ValueEnum};
use grouplab::aut::automorphism_group;
use grouplab::corpus::builtin_corpus;
use grouplab::error::Result;
use grouplab::ff::field::FqField;
use grouplab::ff::poly::lacunary_trials;
use grouplab::group::parse::parse_group;
use grouplab::group::perm::Perm;
use grouplab::power::l_value;
use grouplab::psl2::GammaL2Group;
use grouplab::report::{ReportDocument, ReportFormat};
use grouplab::suites::{run_suite, Suite, SuiteOptions};
use grouplab::wreath::{ncycle_inversion_count, opportune_family, WreathGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "grouplab", version, about = "Finite group counting laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over the built-in corpus.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compute a single quantity for one group.
    Compute {
        #[command(subcommand)]
        what: ComputeCommand,
    },
    /// PGammaL2(q) diagnostics.
    Psl2 {
        #[arg(long)]
        q: u64,
        /// Exact L3 over inner automorphisms, reported beside q^{11/4}.
        #[arg(long)]
        l3: bool,
        /// Check the cubing/conjugation formulas against generic arithmetic
        /// on this many random elements.
        #[arg(long)]
        verify_formulas: Option<usize>,
    },
    /// Randomized lacunary reduction trials over F_{p^k}.
    Lacunary {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Wreath product checks.
    Wreath {
        #[arg(long)]
        base: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        check: WreathCheck,
    },
}

#[derive(Subcommand)]
enum ComputeCommand {
    /// L_e(G) over the full automorphism group.
    Le {
        #[arg(long)]
        group: String,
        #[arg(long)]
        exponent: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WreathCheck {
    Order,
    Opportune,
    Ncycle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify {
            suite,
            max_order,
            report,
            format,
            seed,
            jobs,
        } => {
            let suite = Suite::from_str(&suite)?;
            if let Some(jobs) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .ok();
            }
            let corpus = builtin_corpus(max_order)?;
            let results = run_suite(suite, &corpus, &SuiteOptions { seed });
            let doc = ReportDocument::new(seed, results);
            let mut counts = std::collections::BTreeMap::new();
            for r in &doc.results {
                *counts
                    .entry(format!("{:?}", r.status).to_lowercase())
                    .or_insert(0usize) += 1;
                if matches!(r.status, grouplab::bounds::BoundStatus::Fail) {
                    println!(
                        "FAIL {} :: {} :: {}",
                        r.group,
                        r.check,
                        r.witness.as_deref().unwrap_or("")
                    );
                }
            }
            println!(
                "{} checks on {} groups: {:?}",
                doc.results.len(),
                corpus.len(),
                counts
            );
            if let Some(path) = report {
                let fmt = match format {
                    Format::Json => ReportFormat::Json,
                    Format::Csv => ReportFormat::Csv,
                };
                doc.write(&path, fmt)?;
                println!("report written to {}", path.display());
            }
            Ok(if doc.has_failures() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Compute { what } => match what {
            ComputeCommand::Le { group, exponent } => {
                let g = parse_group(&group)?;
                let aut = automorphism_group(&g)?;
                let (l, witness) = l_value(&g, &aut, exponent);
                println!(
                    "{}",
                    json!({
                        "group": group,
                        "order": g.order(),
                        "aut_order": aut.order(),
                        "exponent": exponent,
                        "l": l,
                        "l_rel": l as f64 / g.order() as f64,
                        "witness_aut_index": witness,
                    })
                );
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Psl2 {
            q,
            l3,
            verify_formulas,
        } => {
            let g = GammaL2Group::new(q)?;
            let mut out = json!({
                "q": q,
                "order": g.order(),
                "q_pow_11_4": (q as f64).powf(11.0 / 4.0),
            });
            if let Some(n) = verify_formulas {
                let mut rng = ChaCha8Rng::seed_from_u64(0x95f2);
                let mut ok = 0usize;
                for _ in 0..n {
                    let x = random_gamma_element(&g, &mut rng);
                    let y = random_gamma_element(&g, &mut rng);
                    if g.cube(&x) == g.cube_generic(&x)
                        && g.conj_apply(&x, &y) == g.conj_generic(&x, &y)
                    {
                        ok += 1;
                    }
                }
                out["formula_trials"] = json!(n);
                out["formula_agreements"] = json!(ok);
            }
            if l3 {
                let (max, witness) = g.l3_inner_max()?;
                out["l3"] = json!(max);
                out["witness"] = serde_json::to_value(witness).expect("witness serializes");
            }
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Lacunary {
            p,
            k,
            l,
            eps,
            trials,
            seed,
        } => {
            let field = FqField::new(p, k)?;
            let rep = lacunary_trials(&field, l, eps, trials, seed)?;
            println!("{}", serde_json::to_string(&rep).expect("report serializes"));
            Ok(if rep.root_mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Wreath { base, n, check } => {
            let base_table = parse_group(&base)?;
            match check {
                WreathCheck::Order => {
                    let w = WreathGroup::new(&base_table, n)?;
                    println!(
                        "{}",
                        json!({ "base": base, "n": n, "order": w.order() })
                    );
                }
                WreathCheck::Opportune => {
                    let mut rng = ChaCha8Rng::seed_from_u64(0x0bb0);
                    let mut im_a: Vec<u16> = (0..n as u16).collect();
                    let mut im_b: Vec<u16> = (0..n as u16).collect();
                    for i in (1..n).rev() {
                        im_a.swap(i, rng.gen_range(0..=i));
                        im_b.swap(i, rng.gen_range(0..=i));
                    }
                    let fam = opportune_family(
                        &Perm::from_images(im_a)?,
                        &Perm::from_images(im_b)?,
                    );
                    println!("{}", serde_json::to_string(&fam).expect("family serializes"));
                }
                WreathCheck::Ncycle => {
                    let mut rng = ChaCha8Rng::seed_from_u64(0x5c1e);
                    let alphas: Vec<_> = (0..n)
                        .map(|_| {
                            grouplab::aut::inner_automorphism(
                                &base_table,
                                rng.gen_range(0..base_table.order() as u32),
                            )
                        })
                        .collect();
                    let (count, _) = ncycle_inversion_count(&base_table, &alphas)?;
                    println!(
                        "{}",
                        json!({
                            "base": base,
                            "n": n,
                            "inverted_tuples": count,
                            "bound": base_table.order(),
                        })
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn random_gamma_element(
    g: &GammaL2Group,
    rng: &mut ChaCha8Rng,
) -> grouplab::psl2::GammaL2Element {
    let q = g.q();
    loop {
        let a = rng.gen_range(0..q);
        let b = rng.gen_range(0..q);
        let c = rng.gen_range(0..q);
        let d = rng.gen_range(0..q);
        let m = rng.gen_range(0..g.frobenius_degree());
        let f = g.field();
        if f.sub(f.mul(a, d), f.mul(b, c)) != 0 {
            return g.normalize(a, b, c, d, m);
        }
    }
}

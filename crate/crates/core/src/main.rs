use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sc_conjugacy::config::{doubling_family, FamilyConfig};
use sc_conjugacy::conjugacy::{
    decide_with, density_experiment, generic_filter, ConjugacyAnswer, DecideOptions, FilterAnswer,
};
use sc_conjugacy::relators::{RelatorFamily, SatBounds, VariantKind};
use sc_conjugacy::satenc::{extract_certificate, parse_instance, reduce_to_conjugacy};
use sc_conjugacy::smallcancel::{reduce_with, PieceCondition, ReduceOptions};
use sc_conjugacy::suites::{oracle_suite, pieces_suite, reduction_suite, sat_suite, SuiteReport};
use sc_conjugacy::{Error, Result};

/// Exit codes: 0 conjugate or pass, 1 not conjugate or fail, 3 unknown or a
/// resource limit, 2 usage and input errors.
#[derive(Parser)]
#[command(name = "scgroups", version, about = "Small-cancellation groups: reduction and conjugacy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family config file; the bundled doubling family when absent.
    #[arg(long)]
    family: Option<PathBuf>,
    /// Override the truncation of a machine family.
    #[arg(long)]
    max_index: Option<u64>,
}

impl FamilyArgs {
    fn load(&self) -> Result<RelatorFamily> {
        match &self.family {
            Some(p) => {
                let mut cfg = FamilyConfig::load(p)?;
                if self.max_index.is_some() {
                    cfg.family.truncation = self.max_index;
                }
                cfg.build()
            }
            None => doubling_family(Some(self.max_index.unwrap_or(4))),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weakly reduce a word, printing the result as a JSON line.
    Reduce {
        #[command(flatten)]
        fam: FamilyArgs,
        word: String,
        /// Print one JSON line per replacement first.
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two words are conjugate.
    Decide {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Use the hard pair of this 3-SAT instance (inline or DIMACS file) instead of U and V.
        #[arg(long, conflicts_with_all = ["u", "v"])]
        sat: Option<String>,
        #[arg(required_unless_present = "sat")]
        u: Option<String>,
        #[arg(required_unless_present = "sat")]
        v: Option<String>,
        /// Run only the linear-time abelian filter.
        #[arg(long)]
        filter_only: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        fam: FamilyArgs,
        suite: Suite,
        /// Small-cancellation condition C(p).
        #[arg(long, conflicts_with = "metric")]
        p: Option<u64>,
        /// Metric condition C'(num/den), as `num/den`.
        #[arg(long)]
        metric: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_clauses: u64,
        #[arg(long, default_value_t = 3)]
        max_var: u64,
        /// Words for reduction traces.
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Longest word for reduction traces and the oracle.
        #[arg(long)]
        max_len: Option<u64>,
        /// Generators for the oracle, comma separated.
        #[arg(long, default_value = "a1,b1,c1,d1")]
        gens: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Answered fraction of the generic filter on random pairs, as CSV.
    Density {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Comma separated word lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Pieces,
    ReductionTraces,
    OracleEquivalence,
    SatReduction,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = match e {
                Error::ResourceLimit(_) | Error::FamilyEvaluation(_) => 3,
                _ => 2,
            };
            eprintln!("error: {e}");
            println!("{}", json!({"error": e.to_string()}));
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Reduce { fam, word, trace } => {
            let family = fam.load()?;
            let al = family.alphabet();
            let w = al.parse_word(&word)?;
            let start = Instant::now();
            let red = reduce_with(&w, &family, ReduceOptions { piece_lengths: trace, max_steps: None })?;
            let elapsed = start.elapsed();
            if trace {
                for line in red.trace.to_records(al) {
                    println!("{line}");
                }
            }
            println!(
                "{}",
                json!({
                    "command": "reduce",
                    "input": al.format(&w),
                    "reduced": al.format(&red.word),
                    "conjugator": al.format(&red.conjugator),
                    "steps": red.trace.steps.len(),
                    "elapsed_us": elapsed.as_micros() as u64,
                })
            );
            Ok(0)
        }
        Command::Decide { fam, sat, u, v, filter_only } => {
            let (family, u, v) = match sat {
                Some(text) => {
                    let text = std::fs::read_to_string(&text).unwrap_or(text);
                    let eta = parse_instance(&text)?;
                    let family = RelatorFamily::sat(None);
                    let (u, v) = reduce_to_conjugacy(family.sat_generators().expect("sat family"), &eta);
                    (family, u, v)
                }
                None => {
                    let family = fam.load()?;
                    let u = family.alphabet().parse_word(&u.expect("required"))?;
                    let v = family.alphabet().parse_word(&v.expect("required"))?;
                    (family, u, v)
                }
            };
            decide_cmd(&family, &u, &v, filter_only)
        }
        Command::Verify {
            fam,
            suite,
            p,
            metric,
            max_clauses,
            max_var,
            count,
            max_len,
            gens,
            seed,
        } => {
            let start = Instant::now();
            let report = match suite {
                Suite::SatReduction => sat_suite(SatBounds::by_variable(max_clauses, max_var))?,
                Suite::Pieces => {
                    let family = fam.load()?;
                    let cond = match (p, metric) {
                        (Some(p), _) => PieceCondition::Small(p),
                        (None, Some(m)) => parse_metric(&m)?,
                        (None, None) if family.kind() == VariantKind::Sat => PieceCondition::Metric { num: 1, den: 9 },
                        (None, None) => PieceCondition::Small(20),
                    };
                    pieces_suite(&family, cond)?
                }
                Suite::ReductionTraces => reduction_suite(&fam.load()?, count, max_len.unwrap_or(500), seed)?,
                Suite::OracleEquivalence => {
                    let family = fam.load()?;
                    let ids = gens
                        .split(',')
                        .map(|g| {
                            family
                                .alphabet()
                                .lookup(g.trim())
                                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {g:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    oracle_suite(&family, &ids, max_len.unwrap_or(6) as usize)?
                }
            };
            print_report(&report, start);
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Density { fam, lengths, samples, seed, out } => {
            let family = fam.load()?;
            let rows = density_experiment(&family, &lengths, samples, seed)?;
            let mut csv = String::from("length,answered_fraction,samples\n");
            for r in rows {
                csv.push_str(&format!("{},{},{}\n", r.length, r.fraction, r.samples));
            }
            match out {
                Some(p) => std::fs::write(&p, csv).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?,
                None => std::io::stdout().write_all(csv.as_bytes()).expect("stdout"),
            }
            Ok(0)
        }
    }
}

fn decide_cmd(family: &RelatorFamily, u: &sc_conjugacy::words::Word, v: &sc_conjugacy::words::Word, filter_only: bool) -> Result<u8> {
    let al = family.alphabet();
    let start = Instant::now();
    if filter_only {
        let ans = generic_filter(family, u, v);
        let (verdict, code) = match ans {
            FilterAnswer::NotConjugate => ("not-conjugate", 1),
            FilterAnswer::Unknown => ("unknown", 3),
        };
        println!(
            "{}",
            json!({"command": "decide", "verdict": verdict, "stage": "filter", "elapsed_us": start.elapsed().as_micros() as u64})
        );
        return Ok(code);
    }
    let d = decide_with(u, v, family, DecideOptions::default())?;
    let mut rec = json!({
        "command": "decide",
        "verdict": d.answer.verdict(),
        "stage": d.stage,
        "fill_calls": d.fill_calls,
        "seed": d.seed,
        "elapsed_us": start.elapsed().as_micros() as u64,
    });
    match &d.answer {
        ConjugacyAnswer::Conjugate { witness, diagram } => {
            rec["witness"] = json!(al.format(witness));
            if let (Some(d), Some(gens)) = (diagram, family.sat_generators()) {
                if let Ok(a) = extract_certificate(d, gens) {
                    rec["certificate"] = json!(a);
                }
            }
        }
        ConjugacyAnswer::Unknown(why) => rec["reason"] = json!(why),
        ConjugacyAnswer::NotConjugate => {}
    }
    println!("{rec}");
    Ok(match d.answer {
        ConjugacyAnswer::Conjugate { .. } => 0,
        ConjugacyAnswer::NotConjugate => 1,
        ConjugacyAnswer::Unknown(_) => 3,
    })
}

fn parse_metric(m: &str) -> Result<PieceCondition> {
    let bad = || Error::InvalidArgument(format!("metric must look like 1/9, got {m:?}"));
    let (a, b) = m.split_once('/').ok_or_else(bad)?;
    let num = a.trim().parse().map_err(|_| bad())?;
    let den = b.trim().parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(PieceCondition::Metric { num, den })
}

fn print_report(r: &SuiteReport, start: Instant) {
    let mut v = json!(r);
    v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    println!("{v}");
}

//! Command-line front end: load or generate a default theory, then run the
//! genetic search, the exhaustive oracle, or a single-chromosome
//! verification.

use clap::{Args, Parser, Subcommand};
use defext::candidate::{Chromosome, Representation};
use defext::ga::GAParams;
use defext::problems::{parse_edges, PeopleVariant};
use defext::runner::{self, exit_code, ProblemSpec};
use defext::PreprocessedTheory;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "defext", version, about = "Extension search for propositional default theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for an extension of a theory, or interrogate it with --oracle
    /// or --verify.
    Solve(SolveArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Theory file (see the README for the format).
    #[arg(value_name = "FILE", conflicts_with_all = ["people", "hamilton"])]
    file: Option<PathBuf>,

    /// Built-in taxonomy benchmark; VARIANT is one of boy, girl, man,
    /// woman, man-student, woman-student.
    #[arg(long, value_name = "VARIANT", conflicts_with = "hamilton")]
    people: Option<PeopleVariant>,

    /// Built-in Hamiltonian-cycle benchmark over N vertices; requires
    /// --edges.
    #[arg(long, value_name = "N", requires = "edges")]
    hamilton: Option<usize>,

    /// Directed edge list for --hamilton, e.g. 0-1,1-2,2-0.
    #[arg(long, value_name = "LIST")]
    edges: Option<String>,

    /// Crossover probability.
    #[arg(long, default_value_t = 0.8)]
    pc: f64,

    /// Per-bit mutation probability.
    #[arg(long, default_value_t = 0.1)]
    pm: f64,

    /// Population size.
    #[arg(long = "pop-size", default_value_t = 325)]
    pop_size: usize,

    /// Generation budget per trial.
    #[arg(long = "max-gens", default_value_t = 1000)]
    max_gens: u32,

    /// Master seed; per-trial seeds derive from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of independent searches.
    #[arg(long, default_value_t = 1)]
    trials: u32,

    /// Replication weight of the top rank in selection.
    #[arg(long = "rank-levels", default_value_t = 4)]
    rank_levels: u32,

    /// Let crossover cut at any bit position instead of gene boundaries.
    #[arg(long = "paper-literal-crossover")]
    paper_literal_crossover: bool,

    /// Encode one bit per default instead of a two-bit gene.
    #[arg(long = "one-bit")]
    one_bit: bool,

    /// Enumerate all extensions exhaustively instead of searching.
    #[arg(long)]
    oracle: bool,

    /// Verify one chromosome (a 0/1 string) against the theory.
    #[arg(long, value_name = "CHROMO", conflicts_with = "oracle")]
    verify: Option<String>,

    /// Emit a JSON report on stdout.
    #[arg(long)]
    json: bool,
}

fn problem_of(args: &SolveArgs) -> Result<ProblemSpec, String> {
    match (&args.file, &args.people, &args.hamilton) {
        (Some(path), None, None) => Ok(ProblemSpec::File(path.clone())),
        (None, Some(variant), None) => Ok(ProblemSpec::People(*variant)),
        (None, None, Some(n)) => Ok(ProblemSpec::Hamilton {
            n: *n,
            edges: parse_edges(args.edges.as_deref().unwrap_or(""))?,
        }),
        (None, None, None) => Err("no theory given: pass FILE, --people or --hamilton".into()),
        _ => Err("FILE, --people and --hamilton are mutually exclusive".into()),
    }
}

fn params_of(args: &SolveArgs) -> GAParams {
    GAParams {
        p_size: args.pop_size,
        p_c: args.pc,
        p_m: args.pm,
        max_generations: args.max_gens,
        rng_seed: args.seed,
        rank_levels: args.rank_levels,
        boundary_crossover: !args.paper_literal_crossover,
        representation: if args.one_bit {
            Representation::OneBit
        } else {
            Representation::TwoBit
        },
    }
}

/// Writes to stdout, tolerating a closed pipe downstream.
fn put(text: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn emit<T: serde::Serialize>(json: bool, report: &T, human: impl FnOnce() -> String) {
    if json {
        put(serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        put(human());
    }
}

fn solve(args: SolveArgs) -> Result<i32, String> {
    let spec = problem_of(&args)?;
    let theory = spec.theory()?;
    let problem = spec.to_string();
    let params = params_of(&args);
    params.validate().map_err(|e| e.to_string())?;

    if args.oracle {
        let report = runner::run_oracle(&theory, &problem).map_err(|e| e.to_string())?;
        emit(args.json, &report, || {
            let mut out = format!("{}: {} extension(s)", report.problem, report.extension_count);
            for (i, ext) in report.extensions.iter().enumerate() {
                out += &format!(
                    "\n  #{i}: defaults {:?} concluding {:?}",
                    ext.generating_default_ids, ext.consequent_formulas
                );
            }
            out
        });
        return Ok(if report.extension_count > 0 {
            exit_code::FOUND
        } else {
            exit_code::NO_EXTENSION
        });
    }

    let pre = PreprocessedTheory::new(theory);

    if let Some(bits) = &args.verify {
        let chromosome: Chromosome = bits.parse().map_err(|e: _| format!("{e}"))?;
        let report = runner::run_verify(&pre, &problem, &chromosome, params.representation)
            .map_err(|e| e.to_string())?;
        emit(args.json, &report, || {
            if report.certified {
                let ext = report.extension.as_ref().unwrap();
                format!(
                    "{}: certified; generating defaults {:?} concluding {:?}",
                    report.problem, ext.generating_default_ids, ext.consequent_formulas
                )
            } else {
                format!(
                    "{}: rejected ({})",
                    report.problem,
                    report.reason.as_deref().unwrap_or("unknown")
                )
            }
        });
        return Ok(if report.certified {
            exit_code::FOUND
        } else {
            exit_code::EXHAUSTED
        });
    }

    let report = runner::run(&pre, &problem, &params, args.trials);
    emit(args.json, &report, || {
        if report.w_inconsistent {
            let mut out = format!(
                "{}: facts are inconsistent; the single trivial extension contains every formula",
                report.problem
            );
            if let Some(ext) = &report.extension {
                out += &format!("\n  generating defaults {:?}", ext.generating_default_ids);
            }
            return out;
        }
        let mut out = format!(
            "{}: {}/{} trials found an extension{}",
            report.problem,
            report.successes,
            report.trials,
            report
                .ng_mean
                .map(|ng| format!(", mean generations {ng:.2}"))
                .unwrap_or_default()
        );
        if let Some(ext) = &report.extension {
            out += &format!(
                "\n  generating defaults {:?} concluding {:?}",
                ext.generating_default_ids, ext.consequent_formulas
            );
        }
        for row in &report.per_trial {
            out += &format!(
                "\n  trial seed {:>20}: {:9} after {} generation(s)",
                row.seed, row.outcome, row.generations
            );
        }
        out
    });
    Ok(if report.w_inconsistent || report.successes > 0 {
        exit_code::FOUND
    } else {
        exit_code::EXHAUSTED
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Solve(args) = cli.command;
    match solve(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(exit_code::ERROR as u8)
        }
    }
}

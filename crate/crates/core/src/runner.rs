//! Repeated-trial driver and machine-readable reports.
//!
//! Reports serialize with a fixed field order, so two runs from the same
//! seed are byte-identical apart from the wall-time field.

use crate::candidate::{verify_extension, Chromosome, Representation, Verdict};
use crate::ga::{search, GAParams, Outcome};
use crate::oracle::{Oracle, OracleError};
use crate::preprocess::PreprocessedTheory;
use crate::problems::{generate_hamilton, generate_people, PeopleVariant};
use crate::queries::QueryStats;
use crate::theory::{parse_theory, DefaultTheory};
use serde::Serialize;
use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

/// Where a problem instance comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemSpec {
    /// A theory file in the format described by [`crate::theory`].
    File(PathBuf),
    /// A built-in taxonomy benchmark variant.
    People(PeopleVariant),
    /// A built-in Hamiltonian-cycle instance over an explicit digraph.
    Hamilton {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::File(path) => write!(f, "{}", path.display()),
            ProblemSpec::People(v) => write!(f, "people({v})"),
            ProblemSpec::Hamilton { n, .. } => write!(f, "hamilton({n})"),
        }
    }
}

impl ProblemSpec {
    /// Loads or generates the theory.
    pub fn theory(&self) -> Result<DefaultTheory, String> {
        match self {
            ProblemSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                parse_theory(&text).map_err(|e| e.to_string())
            }
            ProblemSpec::People(variant) => Ok(generate_people(*variant)),
            ProblemSpec::Hamilton { n, edges } => Ok(generate_hamilton(*n, edges)
                .map_err(|e| e.to_string())?
                .theory),
        }
    }
}

/// Process exit codes of the command-line front end.
pub mod exit_code {
    /// An extension was found (search), proved to exist (oracle), or the
    /// chromosome was certified (verify).
    pub const FOUND: i32 = 0;
    /// Usage, parse or I/O error.
    pub const ERROR: i32 = 1;
    /// Search budget exhausted without a certified extension, or the
    /// chromosome was rejected.
    pub const EXHAUSTED: i32 = 2;
    /// The oracle proved the theory has no extension.
    pub const NO_EXTENSION: i32 = 3;
}

/// Stable per-trial seed: the `index`-th output of the splitmix64 stream
/// seeded by `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add((index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExtensionReport {
    pub generating_default_ids: Vec<usize>,
    pub consequent_formulas: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TrialRow {
    pub seed: u64,
    pub outcome: String,
    pub generations: u32,
    pub penalty_trace_len: usize,
}

/// Aggregate over independent searches of one problem.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TrialAggregate {
    pub problem: String,
    pub params: GAParams,
    pub trials: u32,
    pub successes: u32,
    /// Mean generations over successful trials; absent if none succeeded.
    pub ng_mean: Option<f64>,
    /// Informational only; excluded from reproducibility comparisons.
    pub wall_time_mean_s: Option<f64>,
    pub w_inconsistent: bool,
    pub per_trial: Vec<TrialRow>,
    pub extension: Option<ExtensionReport>,
}

fn extension_report(ids: &[usize], t: &DefaultTheory) -> ExtensionReport {
    ExtensionReport {
        generating_default_ids: ids.to_vec(),
        consequent_formulas: ids
            .iter()
            .map(|&i| t.defaults[i].conseq.to_string())
            .collect(),
    }
}

/// Runs `trials` independent searches with per-trial seeds derived from
/// `params.rng_seed`. Inconsistent facts short-circuit: the theory then has
/// the single trivial extension containing every formula, whose generating
/// defaults are exactly the justification-free ones, and the search never
/// runs.
pub fn run(
    theory: &PreprocessedTheory,
    problem: &str,
    params: &GAParams,
    trials: u32,
) -> TrialAggregate {
    let stats = QueryStats::new();
    let consistent = theory
        .queries()
        .consistent(&theory.queries().empty_set(), &stats);
    if !consistent {
        let ids: Vec<usize> = theory
            .base()
            .defaults
            .iter()
            .filter(|d| d.justifs.is_empty())
            .map(|d| d.id)
            .collect();
        return TrialAggregate {
            problem: problem.to_string(),
            params: params.clone(),
            trials,
            successes: 0,
            ng_mean: None,
            wall_time_mean_s: None,
            w_inconsistent: true,
            per_trial: Vec::new(),
            extension: Some(extension_report(&ids, theory.base())),
        };
    }

    let mut per_trial = Vec::with_capacity(trials as usize);
    let mut extension = None;
    let mut successes = 0u32;
    let mut generations_sum = 0u64;
    let mut elapsed_sum = 0.0f64;
    for i in 0..trials {
        let seed = derive_seed(params.rng_seed, u64::from(i));
        let trial_params = GAParams {
            rng_seed: seed,
            ..params.clone()
        };
        let started = Instant::now();
        let report = search(theory, &trial_params);
        elapsed_sum += started.elapsed().as_secs_f64();
        let outcome = match &report.outcome {
            Outcome::Found { generating_ids, .. } => {
                successes += 1;
                generations_sum += u64::from(report.generations_used);
                if extension.is_none() {
                    extension = Some(extension_report(generating_ids, theory.base()));
                }
                "found"
            }
            Outcome::Exhausted => "exhausted",
        };
        per_trial.push(TrialRow {
            seed,
            outcome: outcome.to_string(),
            generations: report.generations_used,
            penalty_trace_len: report.fitness_trace.len(),
        });
    }

    TrialAggregate {
        problem: problem.to_string(),
        params: params.clone(),
        trials,
        successes,
        ng_mean: (successes > 0).then(|| generations_sum as f64 / f64::from(successes)),
        wall_time_mean_s: (trials > 0).then(|| elapsed_sum / f64::from(trials)),
        w_inconsistent: false,
        per_trial,
        extension,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OracleReport {
    pub problem: String,
    pub extension_count: usize,
    pub extensions: Vec<ExtensionReport>,
}

pub fn run_oracle(theory: &DefaultTheory, problem: &str) -> Result<OracleReport, OracleError> {
    let oracle = Oracle::new(theory);
    let extensions = oracle.all_extensions()?;
    Ok(OracleReport {
        problem: problem.to_string(),
        extension_count: extensions.len(),
        extensions: extensions
            .iter()
            .map(|e| extension_report(&e.generating_ids, theory))
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerifyReport {
    pub problem: String,
    pub chromosome: String,
    pub certified: bool,
    pub reason: Option<String>,
    pub extension: Option<ExtensionReport>,
}

pub fn run_verify(
    theory: &PreprocessedTheory,
    problem: &str,
    chromosome: &Chromosome,
    repr: Representation,
) -> Result<VerifyReport, crate::candidate::LengthMismatch> {
    let stats = QueryStats::new();
    let verdict = verify_extension(chromosome, theory, repr, &stats)?;
    Ok(match verdict {
        Verdict::Certified { cgd, .. } => VerifyReport {
            problem: problem.to_string(),
            chromosome: chromosome.to_string(),
            certified: true,
            reason: None,
            extension: Some(extension_report(cgd.ids(), theory.base())),
        },
        Verdict::Rejected(reason) => VerifyReport {
            problem: problem.to_string(),
            chromosome: chromosome.to_string(),
            certified: false,
            reason: Some(reason.to_string()),
            extension: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    fn pre(src: &str) -> PreprocessedTheory {
        PreprocessedTheory::new(parse_theory(src).unwrap())
    }

    fn quick_params(seed: u64) -> GAParams {
        GAParams {
            p_size: 20,
            max_generations: 100,
            rng_seed: seed,
            ..GAParams::default()
        }
    }

    #[test]
    fn problem_specs_resolve() {
        let people = ProblemSpec::People(crate::problems::PeopleVariant::Boy);
        assert_eq!(people.to_string(), "people(boy)");
        assert_eq!(people.theory().unwrap().defaults.len(), 39);

        let ham = ProblemSpec::Hamilton {
            n: 3,
            edges: vec![(0, 1), (1, 2), (2, 0)],
        };
        assert_eq!(ham.to_string(), "hamilton(3)");
        assert_eq!(ham.theory().unwrap().defaults.len(), 4);

        let missing = ProblemSpec::File(std::path::PathBuf::from("/nonexistent.dt"));
        assert!(missing.theory().is_err());
    }

    #[test]
    fn seed_derivation_is_stable_and_spread() {
        assert_eq!(derive_seed(0, 0), derive_seed(0, 0));
        assert_ne!(derive_seed(0, 0), derive_seed(0, 1));
        assert_ne!(derive_seed(0, 0), derive_seed(1, 0));
    }

    #[test]
    fn aggregates_over_trials() {
        let t = pre("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.");
        let agg = run(&t, "example-1", &quick_params(9), 5);
        assert_eq!(agg.trials, 5);
        assert_eq!(agg.successes, 5);
        assert_eq!(agg.per_trial.len(), 5);
        let ng = agg.ng_mean.unwrap();
        assert!(ng >= 1.0);
        let ext = agg.extension.unwrap();
        assert_eq!(ext.generating_default_ids, vec![0, 2]);
        assert_eq!(ext.consequent_formulas, vec!["d", "g"]);
        assert!(!agg.w_inconsistent);
    }

    #[test]
    fn no_extension_means_zero_successes() {
        let t = pre("W: a.\nD: a : b / ~b.");
        let params = GAParams {
            max_generations: 10,
            ..quick_params(3)
        };
        let agg = run(&t, "w3", &params, 3);
        assert_eq!(agg.successes, 0);
        assert!(agg.ng_mean.is_none());
        assert!(agg.extension.is_none());
        assert!(agg.per_trial.iter().all(|t| t.outcome == "exhausted"));
    }

    #[test]
    fn zero_trials_is_an_empty_aggregate() {
        let t = pre("W: a.\nD:");
        let agg = run(&t, "empty", &quick_params(0), 0);
        assert_eq!(agg.trials, 0);
        assert_eq!(agg.successes, 0);
        assert!(agg.per_trial.is_empty());
        assert!(agg.ng_mean.is_none());
        assert!(agg.wall_time_mean_s.is_none());
    }

    #[test]
    fn inconsistent_facts_short_circuit() {
        let t = pre("W: a. ~a.\nD: : / c. b : d / e.");
        let agg = run(&t, "inconsistent", &quick_params(1), 4);
        assert!(agg.w_inconsistent);
        assert!(agg.per_trial.is_empty());
        // the trivial extension is generated by the justification-free rules
        assert_eq!(agg.extension.unwrap().generating_default_ids, vec![0]);
    }

    #[test]
    fn verify_report_outcomes() {
        let t = pre("W:\nD: a : c / b. b : c / a.");
        let chrom: Chromosome = "1010".parse().unwrap();
        let rep = run_verify(&t, "counter", &chrom, Representation::TwoBit).unwrap();
        assert!(!rep.certified);
        assert!(rep.reason.unwrap().contains("not grounded"));
        let empty: Chromosome = "0000".parse().unwrap();
        let rep = run_verify(&t, "counter", &empty, Representation::TwoBit).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.extension.unwrap().generating_default_ids, Vec::<usize>::new());
    }

    #[test]
    fn oracle_report() {
        let t = parse_theory("W: a. b|c.\nD: a : ~b / ~b. a : ~c / ~c.").unwrap();
        let rep = run_oracle(&t, "w2").unwrap();
        assert_eq!(rep.extension_count, 2);
        assert_eq!(rep.extensions.len(), 2);
    }

    #[test]
    fn report_json_shape() {
        let t = pre("W: a.\nD:");
        let agg = run(&t, "shape", &quick_params(0), 1);
        let json = serde_json::to_value(&agg).unwrap();
        for key in [
            "problem",
            "params",
            "trials",
            "successes",
            "ng_mean",
            "wall_time_mean_s",
            "w_inconsistent",
            "per_trial",
            "extension",
        ] {
            assert!(json.get(key).is_some(), "missing report key {key}");
        }
        let row = &json["per_trial"][0];
        for key in ["seed", "outcome", "generations", "penalty_trace_len"] {
            assert!(row.get(key).is_some(), "missing per-trial key {key}");
        }
    }
}

//! The genetic search loop: evaluate, certify null-penalty candidates,
//! select by rank replication, cross, mutate, repeat.

mod eval;
mod ops;
mod select;

pub use eval::{evaluate, evaluate_detailed, row_of, EvalBreakdown, PENALTY_CASES};
pub use ops::{crossover, mutate};
pub use select::select;

use crate::candidate::{
    interpret, verify_extension, Chromosome, Representation, Verdict,
};
use crate::formula::Formula;
use crate::preprocess::PreprocessedTheory;
use crate::queries::{IdSet, QueryStats};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

/// Lexicographic fitness `(penalty, card(CGD))`; derived `Ord` compares the
/// fields in that order. Smaller is better.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Fitness {
    pub penalty: u32,
    pub cardinality: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GAParams {
    pub p_size: usize,
    pub p_c: f64,
    pub p_m: f64,
    pub max_generations: u32,
    pub rng_seed: u64,
    /// Top-rank replication weight; rank `r` weighs `max(rank_levels - r, 1)`.
    pub rank_levels: u32,
    /// Restrict crossover cuts to gene boundaries so a default's bit pair
    /// never splits. Disabled, cuts may land anywhere in `1..len`.
    pub boundary_crossover: bool,
    pub representation: Representation,
}

impl Default for GAParams {
    fn default() -> GAParams {
        GAParams {
            p_size: 325,
            p_c: 0.8,
            p_m: 0.1,
            max_generations: 1000,
            rng_seed: 0,
            rank_levels: 4,
            boundary_crossover: true,
            representation: Representation::TwoBit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("{name} must lie in [0, 1], got {value}")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    #[error("rank_levels must be at least 1")]
    RankLevelsZero,
}

impl GAParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.p_size < 2 {
            return Err(ParamError::PopulationTooSmall(self.p_size));
        }
        for (name, value) in [("p_c", self.p_c), ("p_m", self.p_m)] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(ParamError::ProbabilityOutOfRange { name, value });
            }
        }
        if self.rank_levels == 0 {
            return Err(ParamError::RankLevelsZero);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Population {
    pub members: Vec<Chromosome>,
    pub generation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A certified extension: the chromosome, the generating default ids and
    /// the generator formulas `W ∪ Conseq(CGD)`.
    Found {
        chromosome: Chromosome,
        generating_ids: Vec<usize>,
        generators: Vec<Formula>,
    },
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: Outcome,
    /// Populations evaluated; the initial population counts as 1.
    pub generations_used: u32,
    /// Best fitness of each evaluated generation.
    pub fitness_trace: Vec<Fitness>,
    pub entailment_query_count: u64,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        matches!(self.outcome, Outcome::Found { .. })
    }
}

fn random_chromosome<R: Rng>(len: usize, forced: &[bool], rng: &mut R) -> Chromosome {
    let mut c = Chromosome::new((0..len).map(|_| rng.gen::<bool>()).collect());
    c.apply_forced(forced);
    c
}

/// Runs the genetic search until a candidate is certified or the generation
/// budget runs out. Identical parameters and seed replay identically.
///
/// Panics if `params.validate()` fails; the front ends validate first.
pub fn search(t: &PreprocessedTheory, params: &GAParams) -> SearchReport {
    params.validate().expect("invalid GA parameters");
    let repr = params.representation;
    let len = t.chromosome_len(repr);
    let forced = t.forced_mask(repr);
    let stats = QueryStats::new();
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);

    let mut population: Vec<Chromosome> = (0..params.p_size)
        .map(|_| random_chromosome(len, &forced, &mut rng))
        .collect();

    // generating sets already rejected by certification; penalty-0 rejection
    // depends only on the selected set, so these never need re-checking
    let mut rejected: HashSet<IdSet> = HashSet::new();
    let mut trace: Vec<Fitness> = Vec::new();
    let genes = t.encoded().len();

    for generation in 1..=params.max_generations {
        let fitnesses: Vec<Fitness> = population
            .iter()
            .map(|c| {
                let cgd = interpret(c, t, repr).expect("population length invariant");
                let facts = t.mask_facts(cgd.mask(), &stats);
                let (table, constraint) = eval::penalty_against(c, genes, repr, &facts);
                Fitness {
                    penalty: table + constraint,
                    cardinality: cgd.len() as u32,
                }
            })
            .collect();
        trace.push(*fitnesses.iter().min().expect("nonempty population"));

        for (c, f) in population.iter().zip(&fitnesses) {
            if f.penalty != 0 {
                continue;
            }
            let cgd = interpret(c, t, repr).expect("population length invariant");
            if rejected.contains(cgd.mask()) {
                continue;
            }
            match verify_extension(c, t, repr, &stats).expect("population length invariant") {
                Verdict::Certified { cgd, generators } => {
                    return SearchReport {
                        outcome: Outcome::Found {
                            chromosome: c.clone(),
                            generating_ids: cgd.ids().to_vec(),
                            generators,
                        },
                        generations_used: generation,
                        fitness_trace: trace,
                        entailment_query_count: stats.asked_count(),
                    };
                }
                Verdict::Rejected(_) => {
                    // the candidate flows on unchanged; the search continues
                    rejected.insert(cgd.mask().clone());
                }
            }
        }

        if generation == params.max_generations {
            break;
        }

        let members: Vec<(Chromosome, Fitness)> =
            population.into_iter().zip(fitnesses).collect();
        let mut selected = select(&members, params.p_size, params.rank_levels);
        selected.shuffle(&mut rng);

        let mut next = Vec::with_capacity(params.p_size);
        let mut pairs = selected.chunks_exact(2);
        for pair in &mut pairs {
            let (c1, c2) = crossover(
                &pair[0],
                &pair[1],
                params.p_c,
                !params.boundary_crossover,
                &forced,
                &mut rng,
            );
            next.push(c1);
            next.push(c2);
        }
        next.extend(pairs.remainder().iter().cloned());
        for c in &mut next {
            mutate(c, params.p_m, &forced, &mut rng);
        }
        population = next;
    }

    SearchReport {
        outcome: Outcome::Exhausted,
        generations_used: params.max_generations,
        fitness_trace: trace,
        entailment_query_count: stats.asked_count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    fn pre(src: &str) -> PreprocessedTheory {
        PreprocessedTheory::new(parse_theory(src).unwrap())
    }

    fn small_params(seed: u64) -> GAParams {
        GAParams {
            p_size: 30,
            max_generations: 200,
            rng_seed: seed,
            ..GAParams::default()
        }
    }

    #[test]
    fn finds_the_unique_extension_of_example_one() {
        let t = pre("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.");
        let report = search(&t, &small_params(1));
        match &report.outcome {
            Outcome::Found { generating_ids, generators, .. } => {
                assert_eq!(generating_ids, &[0, 2]);
                // generators entail exactly Th(W1 ∪ {d, g})
                let d = crate::formula::parse_formula("d").unwrap();
                let g = crate::formula::parse_formula("g").unwrap();
                let e = crate::formula::parse_formula("e").unwrap();
                assert!(crate::formula::entails(generators.iter(), &d));
                assert!(crate::formula::entails(generators.iter(), &g));
                assert!(!crate::formula::entails(generators.iter(), &e));
            }
            Outcome::Exhausted => panic!("search exhausted on a solvable theory"),
        }
        assert_eq!(report.fitness_trace.len() as u32, report.generations_used);
    }

    #[test]
    fn finds_one_of_two_extensions() {
        let t = pre("W: a. b|c.\nD: a : ~b / ~b. a : ~c / ~c.");
        let report = search(&t, &small_params(2));
        match &report.outcome {
            Outcome::Found { generating_ids, .. } => {
                assert!(generating_ids == &[0] || generating_ids == &[1]);
            }
            Outcome::Exhausted => panic!("search exhausted on a solvable theory"),
        }
    }

    #[test]
    fn exhausts_on_theory_without_extension() {
        let t = pre("W: a.\nD: a : b / ~b.");
        let params = GAParams {
            p_size: 10,
            max_generations: 25,
            rng_seed: 3,
            ..GAParams::default()
        };
        let report = search(&t, &params);
        assert_eq!(report.outcome, Outcome::Exhausted);
        assert_eq!(report.generations_used, 25);
        assert_eq!(report.fitness_trace.len(), 25);
    }

    #[test]
    fn never_reports_the_ungrounded_counter_example() {
        // the only zero-penalty candidates of this theory are Th({a,b}) —
        // ungrounded — and the empty set, which is the real extension
        let t = pre("W:\nD: a : c / b. b : c / a.");
        for seed in 0..6 {
            let report = search(&t, &small_params(seed));
            match &report.outcome {
                Outcome::Found { generating_ids, .. } => {
                    assert!(generating_ids.is_empty(), "reported Th({{a,b}})");
                }
                Outcome::Exhausted => {}
            }
        }
    }

    #[test]
    fn identical_seeds_replay_identically() {
        let t = pre("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g. a : g / ~e.");
        let r1 = search(&t, &small_params(77));
        let r2 = search(&t, &small_params(77));
        assert_eq!(r1, r2);
    }

    #[test]
    fn one_bit_representation_searches_too() {
        let t = pre("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.");
        let params = GAParams {
            representation: Representation::OneBit,
            ..small_params(5)
        };
        let report = search(&t, &params);
        assert!(matches!(report.outcome, Outcome::Found { .. }));
    }

    #[test]
    fn param_validation() {
        assert!(GAParams::default().validate().is_ok());
        assert!(GAParams { p_size: 1, ..GAParams::default() }.validate().is_err());
        assert!(GAParams { p_c: 1.5, ..GAParams::default() }.validate().is_err());
        assert!(GAParams { p_m: -0.1, ..GAParams::default() }.validate().is_err());
        assert!(GAParams { rank_levels: 0, ..GAParams::default() }.validate().is_err());
    }
}

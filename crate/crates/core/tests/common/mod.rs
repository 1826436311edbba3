//! Shared test oracles, independent of the implementation under test: a
//! truth-table decision procedure and seeded random generators for formulas
//! and theories.

// each test binary uses its own subset
#![allow(dead_code)]

use defext::formula::{Atom, Formula};
use defext::theory::DefaultTheory;
use rand::Rng;
use std::collections::BTreeSet;

pub fn tt_eval(f: &Formula, atoms: &[Atom], assignment: u64) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => {
            let idx = atoms.iter().position(|x| x == a).expect("atom in universe");
            assignment >> idx & 1 == 1
        }
        Formula::Not(g) => !tt_eval(g, atoms, assignment),
        Formula::And(a, b) => tt_eval(a, atoms, assignment) && tt_eval(b, atoms, assignment),
        Formula::Or(a, b) => tt_eval(a, atoms, assignment) || tt_eval(b, atoms, assignment),
        Formula::Implies(a, b) => !tt_eval(a, atoms, assignment) || tt_eval(b, atoms, assignment),
    }
}

fn universe<'a>(base: impl IntoIterator<Item = &'a Formula>, goal: Option<&Formula>) -> Vec<Atom> {
    let mut atoms = BTreeSet::new();
    for f in base {
        f.atoms_into(&mut atoms);
    }
    if let Some(g) = goal {
        g.atoms_into(&mut atoms);
    }
    atoms.into_iter().collect()
}

/// Truth-table entailment: every model of `base` satisfies `goal`.
pub fn tt_entails(base: &[Formula], goal: &Formula) -> bool {
    let atoms = universe(base, Some(goal));
    assert!(atoms.len() <= 24, "truth table too large");
    for assignment in 0u64..1 << atoms.len() {
        if base.iter().all(|f| tt_eval(f, &atoms, assignment))
            && !tt_eval(goal, &atoms, assignment)
        {
            return false;
        }
    }
    true
}

/// Truth-table consistency: some assignment satisfies every formula.
pub fn tt_consistent(base: &[Formula]) -> bool {
    let atoms = universe(base, None);
    assert!(atoms.len() <= 24, "truth table too large");
    (0u64..1 << atoms.len())
        .any(|assignment| base.iter().all(|f| tt_eval(f, &atoms, assignment)))
}

/// A random formula over the first `n_atoms` of `pool`, size-bounded.
pub fn random_formula<R: Rng>(rng: &mut R, pool: &[&str], depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => {
                let atom = Formula::atom(pool[rng.gen_range(0..pool.len())]);
                if rng.gen_bool(0.4) {
                    Formula::not(atom)
                } else {
                    atom
                }
            }
        };
    }
    let a = random_formula(rng, pool, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(a),
        1 => Formula::and(a, random_formula(rng, pool, depth - 1)),
        2 => Formula::or(a, random_formula(rng, pool, depth - 1)),
        _ => Formula::implies(a, random_formula(rng, pool, depth - 1)),
    }
}

fn random_literal<R: Rng>(rng: &mut R, pool: &[&str]) -> Formula {
    let atom = Formula::atom(pool[rng.gen_range(0..pool.len())]);
    if rng.gen_bool(0.5) {
        Formula::not(atom)
    } else {
        atom
    }
}

fn random_clause<R: Rng>(rng: &mut R, pool: &[&str]) -> Formula {
    let width = rng.gen_range(1..=3);
    Formula::disjoin((0..width).map(|_| random_literal(rng, pool)))
}

/// A random small default theory: up to `max_defaults` rules over `pool`,
/// with self-blocking rules mixed in.
pub fn random_theory<R: Rng>(rng: &mut R, pool: &[&str], max_defaults: usize) -> DefaultTheory {
    let facts = (0..rng.gen_range(0..=2)).map(|_| random_clause(rng, pool)).collect();
    let n = rng.gen_range(1..=max_defaults);
    let rules = (0..n)
        .map(|_| {
            let prereq = match rng.gen_range(0..10) {
                0..=1 => Formula::True,
                2..=7 => random_literal(rng, pool),
                _ => random_clause(rng, pool),
            };
            if rng.gen_bool(0.15) {
                // self-blocking shape: one justification, negated consequent
                let justif = random_literal(rng, pool);
                let conseq = Formula::not(justif.clone());
                return (prereq, vec![justif], conseq);
            }
            let justifs = (0..rng.gen_range(0..=2)).map(|_| random_literal(rng, pool)).collect();
            let conseq = if rng.gen_bool(0.2) {
                Formula::and(random_literal(rng, pool), random_literal(rng, pool))
            } else {
                random_literal(rng, pool)
            };
            (prereq, justifs, conseq)
        })
        .collect();
    DefaultTheory::new(facts, rules)
}

//! Precompiled entailment queries against a default theory.
//!
//! Every deduction the search, the verifier and the oracle need has the shape
//! `W ∪ Conseq(S) ⊢ goal` for some default subset `S` and a goal drawn from
//! the theory's own formulas. All of those formulas are clausified once into
//! blocks over one variable space; a query base is then a block subset picked
//! by a bitmask. A [`TheorySession`] loads and propagates one base and
//! answers many goals against it incrementally.

use crate::formula::{BlockId, CompiledProver, Formula, Session};
use crate::theory::DefaultTheory;
use std::sync::atomic::{AtomicU64, Ordering};

/// A set of default ids with a canonical fixed-width bitmask representation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IdSet {
    words: Vec<u64>,
}

impl IdSet {
    pub fn empty(universe: usize) -> IdSet {
        IdSet {
            words: vec![0; universe.div_ceil(64).max(1)],
        }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> IdSet {
        let mut s = IdSet::empty(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn insert(&mut self, id: usize) {
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn contains(&self, id: usize) -> bool {
        self.words[id / 64] & (1 << (id % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| wi * 64 + b)
        })
    }
}

/// Goals a query can ask of a base `W ∪ Conseq(applied)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Goal {
    /// The prerequisite of default `i`.
    Prereq(u32),
    /// The negated `j`-th justification of default `i`.
    NegJustif(u32, u32),
    /// The consequent of default `i`.
    Conseq(u32),
    /// Falsity — entailed iff the base is inconsistent.
    Inconsistency,
}

/// Counts the entailment queries answered during one run.
#[derive(Debug, Default)]
pub struct QueryStats {
    asked: AtomicU64,
}

impl QueryStats {
    pub fn new() -> QueryStats {
        QueryStats::default()
    }

    pub fn count(&self) {
        self.asked.fetch_add(1, Ordering::Relaxed);
    }

    /// Credits queries answered on behalf of the caller, e.g. replayed from
    /// a memo; keeps counts independent of cache warmth.
    pub fn add(&self, n: u64) {
        self.asked.fetch_add(n, Ordering::Relaxed);
    }

    pub fn asked_count(&self) -> u64 {
        self.asked.load(Ordering::Relaxed)
    }
}

pub struct TheoryQueries {
    prover: CompiledProver,
    w_blocks: Vec<BlockId>,
    conseq_blocks: Vec<BlockId>,
    neg_prereq_blocks: Vec<BlockId>,
    neg_conseq_blocks: Vec<BlockId>,
    justif_blocks: Vec<Vec<BlockId>>,
    universe: usize,
}

impl TheoryQueries {
    pub fn new(theory: &DefaultTheory) -> TheoryQueries {
        let mut prover = CompiledProver::new();
        let w_blocks = theory.facts.iter().map(|f| prover.assert_block(f)).collect();
        let conseq_blocks = theory
            .defaults
            .iter()
            .map(|d| prover.assert_block(&d.conseq))
            .collect();
        let neg_prereq_blocks = theory
            .defaults
            .iter()
            .map(|d| prover.refute_block(&d.prereq))
            .collect();
        let neg_conseq_blocks = theory
            .defaults
            .iter()
            .map(|d| prover.refute_block(&d.conseq))
            .collect();
        let justif_blocks = theory
            .defaults
            .iter()
            // goal is ~justif, so the refutation block asserts the justification
            .map(|d| d.justifs.iter().map(|j| prover.assert_block(j)).collect())
            .collect();
        TheoryQueries {
            prover,
            w_blocks,
            conseq_blocks,
            neg_prereq_blocks,
            neg_conseq_blocks,
            justif_blocks,
            universe: theory.defaults.len(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn empty_set(&self) -> IdSet {
        IdSet::empty(self.universe)
    }

    pub fn set_from(&self, ids: impl IntoIterator<Item = usize>) -> IdSet {
        IdSet::from_ids(self.universe, ids)
    }

    /// Opens a session whose base is `W ∪ Conseq(applied)`.
    pub fn session(&self, applied: &IdSet) -> TheorySession<'_> {
        let base = self
            .w_blocks
            .iter()
            .copied()
            .chain(applied.ids().map(|i| self.conseq_blocks[i]));
        TheorySession {
            queries: self,
            session: self.prover.session(base),
        }
    }

    /// One-shot `W ∪ Conseq(applied) ⊢ goal`.
    pub fn entails(&self, applied: &IdSet, goal: Goal, stats: &QueryStats) -> bool {
        self.session(applied).holds(goal, stats)
    }

    pub fn prereq_entailed(&self, applied: &IdSet, id: usize, stats: &QueryStats) -> bool {
        self.entails(applied, Goal::Prereq(id as u32), stats)
    }

    /// True iff some justification of default `id` is blocked, i.e. its
    /// negation is entailed. Defaults with no justifications are never
    /// blocked.
    pub fn justif_blocked(&self, applied: &IdSet, id: usize, count: usize, stats: &QueryStats) -> bool {
        let mut session = self.session(applied);
        (0..count).any(|j| session.holds(Goal::NegJustif(id as u32, j as u32), stats))
    }

    pub fn conseq_entailed(&self, applied: &IdSet, id: usize, stats: &QueryStats) -> bool {
        self.entails(applied, Goal::Conseq(id as u32), stats)
    }

    pub fn consistent(&self, applied: &IdSet, stats: &QueryStats) -> bool {
        !self.entails(applied, Goal::Inconsistency, stats)
    }
}

/// Incremental goal probing over one fixed base.
pub struct TheorySession<'a> {
    queries: &'a TheoryQueries,
    session: Session<'a>,
}

impl TheorySession<'_> {
    /// `base ⊢ goal`.
    pub fn holds(&mut self, goal: Goal, stats: &QueryStats) -> bool {
        stats.count();
        let q = self.queries;
        let block = match goal {
            Goal::Prereq(i) => Some(q.neg_prereq_blocks[i as usize]),
            Goal::NegJustif(i, j) => Some(q.justif_blocks[i as usize][j as usize]),
            Goal::Conseq(i) => Some(q.neg_conseq_blocks[i as usize]),
            Goal::Inconsistency => None,
        };
        !self.session.sat_with(block)
    }

    pub fn prereq_entailed(&mut self, id: usize, stats: &QueryStats) -> bool {
        self.holds(Goal::Prereq(id as u32), stats)
    }

    pub fn justif_blocked(&mut self, id: usize, count: usize, stats: &QueryStats) -> bool {
        (0..count).any(|j| self.holds(Goal::NegJustif(id as u32, j as u32), stats))
    }

    pub fn conseq_entailed(&mut self, id: usize, stats: &QueryStats) -> bool {
        self.holds(Goal::Conseq(id as u32), stats)
    }
}

/// Generator formulas `W ∪ Conseq(ids)` of a candidate, in theory order.
pub fn generator_formulas(theory: &DefaultTheory, ids: &IdSet) -> Vec<Formula> {
    let mut out = theory.facts.clone();
    out.extend(ids.ids().map(|i| theory.defaults[i].conseq.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    #[test]
    fn idset_basics() {
        let mut s = IdSet::empty(100);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(65);
        assert!(s.contains(0) && s.contains(65) && !s.contains(64));
        assert_eq!(s.len(), 2);
        assert_eq!(s.ids().collect::<Vec<_>>(), vec![0, 65]);
        assert_eq!(s, IdSet::from_ids(100, [65, 0]));
    }

    #[test]
    fn masked_queries_match_example_one() {
        let t = parse_theory("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.").unwrap();
        let q = TheoryQueries::new(&t);
        let stats = QueryStats::new();
        let w_only = q.empty_set();
        assert!(q.prereq_entailed(&w_only, 0, &stats)); // W ⊢ a
        assert!(!q.prereq_entailed(&w_only, 1, &stats)); // W ⊬ c
        assert!(!q.prereq_entailed(&w_only, 2, &stats)); // W ⊬ d
        let with_first = q.set_from([0]);
        assert!(q.prereq_entailed(&with_first, 2, &stats)); // W ∪ {d} ⊢ d
        assert!(q.conseq_entailed(&with_first, 0, &stats));
        assert!(q.consistent(&with_first, &stats));
        // justification of the first default is ~b, blocked iff base ⊢ b
        assert!(!q.justif_blocked(&with_first, 0, 1, &stats));
        assert!(stats.asked_count() >= 7);
    }

    #[test]
    fn session_answers_match_one_shot_queries(){
        let t = parse_theory("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.").unwrap();
        let q = TheoryQueries::new(&t);
        let stats = QueryStats::new();
        for mask_bits in 0u64..8 {
            let mask = q.set_from((0..3).filter(|i| mask_bits >> i & 1 == 1));
            let mut session = q.session(&mask);
            for id in 0..3 {
                assert_eq!(
                    session.prereq_entailed(id, &stats),
                    q.prereq_entailed(&mask, id, &stats)
                );
                assert_eq!(
                    session.conseq_entailed(id, &stats),
                    q.conseq_entailed(&mask, id, &stats)
                );
                assert_eq!(
                    session.justif_blocked(id, 1, &stats),
                    q.justif_blocked(&mask, id, 1, &stats)
                );
            }
        }
    }

    #[test]
    fn inconsistency_goal() {
        let t = parse_theory("W: a.\nD: a : b / ~a.").unwrap();
        let q = TheoryQueries::new(&t);
        let stats = QueryStats::new();
        assert!(q.consistent(&q.empty_set(), &stats));
        assert!(!q.consistent(&q.set_from([0]), &stats));
    }
}

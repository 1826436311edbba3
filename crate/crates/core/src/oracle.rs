//! Exhaustive ground-truth enumeration of extensions for small theories.
//!
//! A candidate subset `S ⊆ D` is accepted when the iterative reconstruction
//! starting from `W` — repeatedly applying every default whose prerequisite
//! is provable so far and no negated justification is provable from the
//! candidate theory `Th(W ∪ Conseq(S))` — reaches a fixpoint whose applied
//! set is exactly `S`. The iteration runs at the level of applied-default
//! sets, which stabilize within `|D|` rounds. Extensions are identified by
//! their generating default set; semi-monotonicity is never assumed.

use crate::formula::Formula;
use crate::queries::{generator_formulas, IdSet, QueryStats, TheoryQueries};
use crate::theory::DefaultTheory;
use thiserror::Error;

/// Ceiling on `|D|` for exhaustive enumeration.
pub const DEFAULT_MAX_DEFAULTS: usize = 16;

/// One extension, identified by its generating default set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRecord {
    pub generating_ids: Vec<usize>,
    /// `W ∪ Conseq(generating_ids)`.
    pub generators: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("theory has {count} defaults, above the exhaustive bound {bound}")]
    TooManyDefaults { count: usize, bound: usize },
}

pub struct Oracle<'a> {
    theory: &'a DefaultTheory,
    queries: TheoryQueries,
    pub stats: QueryStats,
}

impl<'a> Oracle<'a> {
    pub fn new(theory: &'a DefaultTheory) -> Oracle<'a> {
        Oracle {
            theory,
            queries: TheoryQueries::new(theory),
            stats: QueryStats::new(),
        }
    }

    /// The applied-set fixpoint of the iterative characterization, with
    /// justification consistency judged against the candidate theory
    /// `Th(W ∪ Conseq(candidate))`.
    fn applied_fixpoint(&self, candidate: &IdSet) -> IdSet {
        let q = &self.queries;
        let mut applied = q.empty_set();
        loop {
            let mut grew = false;
            for d in &self.theory.defaults {
                if applied.contains(d.id) {
                    continue;
                }
                if q.prereq_entailed(&applied, d.id, &self.stats)
                    && !q.justif_blocked(candidate, d.id, d.justifs.len(), &self.stats)
                {
                    applied.insert(d.id);
                    grew = true;
                }
            }
            if !grew {
                return applied;
            }
        }
    }

    /// True iff `Th(W ∪ Conseq(candidate_ids))` is an extension whose
    /// generating default set is exactly `candidate_ids`.
    pub fn check_extension(&self, candidate_ids: &IdSet) -> bool {
        let applied = self.applied_fixpoint(candidate_ids);
        applied == *candidate_ids && self.mutually_entailing(&applied, candidate_ids)
    }

    /// Generator sets prove each other's consequents (facts are shared).
    fn mutually_entailing(&self, a: &IdSet, b: &IdSet) -> bool {
        b.ids()
            .all(|i| a.contains(i) || self.queries.conseq_entailed(a, i, &self.stats))
            && a.ids()
                .all(|i| b.contains(i) || self.queries.conseq_entailed(b, i, &self.stats))
    }

    /// Enumerates every subset of `D` in ascending bitmask order and keeps
    /// the accepted ones, deduplicating records whose generator sets are
    /// mutually entailing.
    pub fn all_extensions(&self) -> Result<Vec<ExtensionRecord>, OracleError> {
        self.all_extensions_bounded(DEFAULT_MAX_DEFAULTS)
    }

    pub fn all_extensions_bounded(&self, bound: usize) -> Result<Vec<ExtensionRecord>, OracleError> {
        let n = self.theory.defaults.len();
        if n > bound {
            return Err(OracleError::TooManyDefaults { count: n, bound });
        }
        let mut found: Vec<(IdSet, ExtensionRecord)> = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let candidate = self
                .queries
                .set_from((0..n).filter(|i| mask >> i & 1 == 1));
            if !self.check_extension(&candidate) {
                continue;
            }
            if found
                .iter()
                .any(|(ids, _)| self.mutually_entailing(ids, &candidate))
            {
                continue;
            }
            let record = ExtensionRecord {
                generating_ids: candidate.ids().collect(),
                generators: generator_formulas(self.theory, &candidate),
            };
            found.push((candidate, record));
        }
        Ok(found.into_iter().map(|(_, r)| r).collect())
    }

    pub fn queries(&self) -> &TheoryQueries {
        &self.queries
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::parse_theory;

    fn oracle_count(src: &str) -> usize {
        let t = parse_theory(src).unwrap();
        Oracle::new(&t).all_extensions().unwrap().len()
    }

    #[test]
    fn example_one_first_theory_has_a_unique_extension() {
        let t = parse_theory("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.").unwrap();
        let o = Oracle::new(&t);
        let exts = o.all_extensions().unwrap();
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].generating_ids, vec![0, 2]);
        let d = crate::formula::parse_formula("d").unwrap();
        let g = crate::formula::parse_formula("g").unwrap();
        assert!(crate::formula::entails(exts[0].generators.iter(), &d));
        assert!(crate::formula::entails(exts[0].generators.iter(), &g));
    }

    #[test]
    fn example_one_second_theory_has_two_extensions() {
        assert_eq!(oracle_count("W: a. b|c.\nD: a : ~b / ~b. a : ~c / ~c."), 2);
    }

    #[test]
    fn example_one_third_theory_has_none() {
        assert_eq!(oracle_count("W: a.\nD: a : b / ~b."), 0);
    }

    #[test]
    fn check_extension_on_the_counter_example() {
        let t = parse_theory("W:\nD: a : c / b. b : c / a.").unwrap();
        let o = Oracle::new(&t);
        // Th({a,b}) is not an extension, Th(∅) is
        assert!(!o.check_extension(&o.queries().set_from([0, 1])));
        assert!(o.check_extension(&o.queries().set_from([])));
        let exts = o.all_extensions().unwrap();
        assert_eq!(exts.len(), 1);
        assert!(exts[0].generating_ids.is_empty());
    }

    #[test]
    fn empty_set_fails_when_a_default_must_fire() {
        // (W3, D3): under E = Th({a}) the lone default fires, so ∅ is not
        // the generating set of an extension
        let t = parse_theory("W: a.\nD: a : b / ~b.").unwrap();
        let o = Oracle::new(&t);
        assert!(!o.check_extension(&o.queries().set_from([])));
        assert!(!o.check_extension(&o.queries().set_from([0])));
    }

    #[test]
    fn proper_subset_of_the_generating_set_is_rejected() {
        // candidate {0} reconstructs to {0, 1}: same theory, wrong set
        let t = parse_theory("W:\nD: : / a. a : / a.").unwrap();
        let o = Oracle::new(&t);
        assert!(!o.check_extension(&o.queries().set_from([0])));
        assert!(o.check_extension(&o.queries().set_from([0, 1])));
    }

    #[test]
    fn bound_is_enforced() {
        let rules: String = (0..17).map(|i| format!("a{i} : b / c. ")).collect();
        let t = parse_theory(&format!("W:\nD: {rules}")).unwrap();
        let o = Oracle::new(&t);
        assert_eq!(
            o.all_extensions().unwrap_err(),
            OracleError::TooManyDefaults { count: 17, bound: 16 }
        );
    }

    #[test]
    fn inconsistent_facts_yield_the_justification_free_fixpoint() {
        // with inconsistent W every justified default is blocked; only the
        // justification-free one fires
        let t = parse_theory("W: a. ~a.\nD: : / c. b : d / e.").unwrap();
        let o = Oracle::new(&t);
        let exts = o.all_extensions().unwrap();
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].generating_ids, vec![0]);
    }
}

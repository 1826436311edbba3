//! Theory preprocessing: split off self-blocking constraint defaults and pin
//! chromosome bits that every candidate must carry.
//!
//! A default `a : b / ~b` blocks itself the moment it is applied, so it is
//! dropped from the chromosome encoding and enforced as a side condition on
//! candidate extensions instead: either the prerequisite is not entailed or
//! `~b` is. Detection is purely syntactic after rewriting `~~f` to `f`; a
//! semantically equivalent but syntactically different justification/
//! consequent pair is *not* treated as self-blocking.
//!
//! For every remaining default, bits whose value is already decided by `W`
//! alone are forced: the prerequisite bit when `W ⊢ prereq`, the blocked bit
//! when `W ⊢ ~justif` for some justification.

use crate::candidate::{compute_mask_facts, MaskFacts, Representation};
use crate::formula::Formula;
use crate::queries::{IdSet, QueryStats, TheoryQueries};
use crate::theory::{Default, DefaultTheory};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

// Distinct selected sets memoized before the table is flushed.
const FACTS_MEMO_CAP: usize = 1 << 19;

/// Bits of one encoded default pinned to 1 by `W` alone.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ForcedBits {
    pub prereq: bool,
    pub justif: bool,
}

/// True iff the rule has exactly one justification `b` and its consequent is
/// syntactically `~b` after double-negation normalization.
pub fn is_self_blocking(d: &Default) -> bool {
    match d.justifs.as_slice() {
        [justif] => {
            d.conseq.strip_double_negation()
                == Formula::not(justif.clone()).strip_double_negation()
        }
        _ => false,
    }
}

pub struct PreprocessedTheory {
    base: DefaultTheory,
    encoded: Vec<Default>,
    constraints: Vec<Default>,
    forced: Vec<ForcedBits>,
    queries: TheoryQueries,
    facts_memo: Mutex<HashMap<IdSet, Arc<MaskFacts>>>,
}

impl PreprocessedTheory {
    pub fn new(base: DefaultTheory) -> PreprocessedTheory {
        let queries = TheoryQueries::new(&base);
        let (constraints, encoded): (Vec<_>, Vec<_>) =
            base.defaults.iter().cloned().partition(is_self_blocking);
        let stats = QueryStats::new();
        let w_only = queries.empty_set();
        let forced = encoded
            .iter()
            .map(|d| ForcedBits {
                prereq: queries.prereq_entailed(&w_only, d.id, &stats),
                justif: queries.justif_blocked(&w_only, d.id, d.justifs.len(), &stats),
            })
            .collect();
        PreprocessedTheory {
            base,
            encoded,
            constraints,
            forced,
            queries,
            facts_memo: Mutex::new(HashMap::new()),
        }
    }

    /// Deductions about one selected set, memoized: the search and the
    /// verifier re-ask the same sets constantly and the answers are pure.
    pub(crate) fn mask_facts(&self, mask: &IdSet, stats: &QueryStats) -> Arc<MaskFacts> {
        if let Some(found) = self.facts_memo.lock().unwrap().get(mask) {
            stats.add(found.query_cost);
            return found.clone();
        }
        let facts = Arc::new(compute_mask_facts(self, mask));
        stats.add(facts.query_cost);
        let mut memo = self.facts_memo.lock().unwrap();
        if memo.len() >= FACTS_MEMO_CAP {
            memo.clear();
        }
        memo.insert(mask.clone(), facts.clone());
        facts
    }

    pub fn base(&self) -> &DefaultTheory {
        &self.base
    }

    /// Defaults carried in the chromosome, in base-theory order. Each keeps
    /// its original id.
    pub fn encoded(&self) -> &[Default] {
        &self.encoded
    }

    /// Self-blocking defaults enforced as candidate-extension constraints.
    pub fn constraints(&self) -> &[Default] {
        &self.constraints
    }

    pub fn forced_bits(&self) -> &[ForcedBits] {
        &self.forced
    }

    pub fn queries(&self) -> &TheoryQueries {
        &self.queries
    }

    pub fn chromosome_len(&self, repr: Representation) -> usize {
        match repr {
            Representation::TwoBit => 2 * self.encoded.len(),
            Representation::OneBit => self.encoded.len(),
        }
    }

    /// Per-position pin-to-1 mask for chromosomes under `repr`. The one-bit
    /// scheme has no forced positions.
    pub fn forced_mask(&self, repr: Representation) -> Vec<bool> {
        match repr {
            Representation::TwoBit => {
                let mut mask = vec![false; 2 * self.encoded.len()];
                for (i, fb) in self.forced.iter().enumerate() {
                    mask[2 * i] = fb.prereq;
                    mask[2 * i + 1] = fb.justif;
                }
                mask
            }
            Representation::OneBit => vec![false; self.encoded.len()],
        }
    }
}

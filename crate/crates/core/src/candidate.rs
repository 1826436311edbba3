//! Chromosome semantics: which defaults a bitstring selects, the candidate
//! extension those defaults generate, groundedness, and certification of
//! genuine extensions.
//!
//! Under the default two-bit scheme a default `i` owns the bit pair
//! `(bits[2i], bits[2i+1])`: the first bit assumes its prerequisite belongs
//! to the candidate extension, the second assumes some justification is
//! blocked there. The default is selected exactly on the pattern `(1, 0)`.
//! The alternative one-bit scheme selects default `i` iff `bits[i] = 1`; it
//! is kept for side-by-side experiments.

use crate::formula::Formula;
use crate::preprocess::PreprocessedTheory;
use crate::queries::{IdSet, QueryStats};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Chromosome encoding scheme.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// Two bits per encoded default: prerequisite-assumed, blocked-assumed.
    #[default]
    TwoBit,
    /// One bit per encoded default: selected or not.
    OneBit,
}

/// A fixed-length bitstring. Prints in gene order, e.g. `100011`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    bits: Vec<bool>,
}

impl Chromosome {
    pub fn new(bits: Vec<bool>) -> Chromosome {
        Chromosome { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Pins every masked position to 1.
    pub fn apply_forced(&mut self, forced: &[bool]) {
        debug_assert_eq!(forced.len(), self.bits.len());
        for (b, &f) in self.bits.iter_mut().zip(forced) {
            if f {
                *b = true;
            }
        }
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chromosome must be a string over 0/1, got {found:?}")]
pub struct ChromosomeParseError {
    pub found: char,
}

impl FromStr for Chromosome {
    type Err = ChromosomeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ChromosomeParseError { found: other }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Chromosome::new)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chromosome length {got} does not match encoding length {expected}")]
pub struct LengthMismatch {
    pub expected: usize,
    pub got: usize,
}

/// The candidate generating default set selected by a chromosome: ids refer
/// to the base theory and are sorted ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratingSet {
    ids: Vec<usize>,
    mask: IdSet,
}

impl GeneratingSet {
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn mask(&self) -> &IdSet {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// True iff gene `gene` of `g` selects its default.
pub(crate) fn gene_selected(g: &Chromosome, gene: usize, repr: Representation) -> bool {
    match repr {
        Representation::TwoBit => g.get(2 * gene) && !g.get(2 * gene + 1),
        Representation::OneBit => g.get(gene),
    }
}

/// Computes the candidate generating default set of `g`.
pub fn interpret(
    g: &Chromosome,
    t: &PreprocessedTheory,
    repr: Representation,
) -> Result<GeneratingSet, LengthMismatch> {
    let expected = t.chromosome_len(repr);
    if g.len() != expected {
        return Err(LengthMismatch {
            expected,
            got: g.len(),
        });
    }
    let ids: Vec<usize> = t
        .encoded()
        .iter()
        .enumerate()
        .filter(|(gene, _)| gene_selected(g, *gene, repr))
        .map(|(_, d)| d.id)
        .collect();
    let mask = t.queries().set_from(ids.iter().copied());
    Ok(GeneratingSet { ids, mask })
}

/// A candidate extension, represented intensionally by the finite generator
/// set `W ∪ Conseq(CGD)`; membership is decided by entailment, the deductive
/// closure is never materialized.
#[derive(Clone, Debug)]
pub struct CandidateExtension {
    generators: Vec<Formula>,
}

impl CandidateExtension {
    pub fn generators(&self) -> &[Formula] {
        &self.generators
    }

    pub fn entails(&self, goal: &Formula) -> bool {
        crate::formula::entails(self.generators.iter(), goal)
    }
}

pub fn candidate_extension(cgd: &GeneratingSet, t: &PreprocessedTheory) -> CandidateExtension {
    CandidateExtension {
        generators: crate::queries::generator_formulas(t.base(), cgd.mask()),
    }
}

/// Outcome of the groundedness check: either an ordering of the whole set
/// where each prerequisite is provable from `W` plus the consequents placed
/// before it, or the residue that can never be reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundednessWitness {
    Grounded { order: Vec<usize> },
    Ungrounded { order: Vec<usize>, residue: Vec<usize> },
}

impl GroundednessWitness {
    pub fn is_grounded(&self) -> bool {
        matches!(self, GroundednessWitness::Grounded { .. })
    }
}

/// Greedy saturation: starting from `W`, repeatedly place any still-unplaced
/// member whose prerequisite is entailed, adding its consequent to the base.
/// Applicability is monotone in the base, so the greedy choice is complete
/// and any pick order yields the same verdict.
pub fn is_grounded(
    cgd: &GeneratingSet,
    t: &PreprocessedTheory,
    stats: &QueryStats,
) -> GroundednessWitness {
    grounded_with_preference(cgd, t, stats, cgd.ids())
}

/// `is_grounded` with an explicit pick-preference order; exposed for the
/// order-insensitivity tests.
#[doc(hidden)]
pub fn grounded_with_preference(
    cgd: &GeneratingSet,
    t: &PreprocessedTheory,
    stats: &QueryStats,
    preference: &[usize],
) -> GroundednessWitness {
    debug_assert_eq!(
        {
            let mut p = preference.to_vec();
            p.sort_unstable();
            p
        },
        cgd.ids().to_vec(),
        "preference must permute the generating set"
    );
    let q = t.queries();
    let mut placed = q.empty_set();
    let mut order = Vec::with_capacity(cgd.len());
    let mut remaining: Vec<usize> = preference.to_vec();
    while !remaining.is_empty() {
        let mut session = q.session(&placed);
        let next = remaining
            .iter()
            .position(|&id| session.prereq_entailed(id, stats));
        match next {
            Some(pos) => {
                let id = remaining.remove(pos);
                placed.insert(id);
                order.push(id);
            }
            None => {
                return GroundednessWitness::Ungrounded {
                    order,
                    residue: remaining,
                };
            }
        }
    }
    GroundednessWitness::Grounded { order }
}

/// Why a chromosome fails certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// The evaluation of encoded defaults carries a positive penalty.
    Penalty { penalty: u32 },
    /// A constraint default fires: its prerequisite is entailed but the
    /// negated justification is not.
    ConstraintViolated { id: usize },
    /// The generating set cannot be ordered.
    NotGrounded { residue: Vec<usize> },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Penalty { penalty } => write!(f, "penalty {penalty} > 0"),
            Rejection::ConstraintViolated { id } => {
                write!(f, "constraint default {id} violated")
            }
            Rejection::NotGrounded { residue } => {
                write!(f, "generating set not grounded, residue {residue:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The chromosome denotes a genuine extension `Th(generators)` with
    /// generating default set `cgd`.
    Certified {
        cgd: GeneratingSet,
        generators: Vec<Formula>,
    },
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }
}

/// True iff constraint default `id` fires against the candidate base: the
/// prerequisite is entailed while the negated justification is not.
pub(crate) fn constraint_violated(
    t: &PreprocessedTheory,
    base: &IdSet,
    id: usize,
    stats: &QueryStats,
) -> bool {
    let q = t.queries();
    q.prereq_entailed(base, id, stats) && !q.justif_blocked(base, id, 1, stats)
}

/// The penalty-relevant deductions about one selected set: which encoded
/// defaults are licensed to fire under its candidate extension (prerequisite
/// entailed, no justification blocked), and how many constraint defaults it
/// violates. Everything else in the fitness is read off the chromosome bits.
#[derive(Clone, Debug)]
pub(crate) struct MaskFacts {
    /// Bitmap over gene positions.
    pub licensed: IdSet,
    pub constraint_penalty: u32,
    /// Queries it took to compute this entry; replayed into the caller's
    /// stats on memo hits so counts do not depend on cache warmth.
    pub query_cost: u64,
}

pub(crate) fn compute_mask_facts(t: &PreprocessedTheory, base: &IdSet) -> MaskFacts {
    let stats = QueryStats::new();
    let mut session = t.queries().session(base);
    let mut licensed = IdSet::empty(t.encoded().len());
    for (gene, d) in t.encoded().iter().enumerate() {
        let forced = t.forced_bits()[gene];
        if forced.justif {
            continue; // blocked under W alone, hence under any base
        }
        let prereq_ok = forced.prereq || session.prereq_entailed(d.id, &stats);
        if prereq_ok && !session.justif_blocked(d.id, d.justifs.len(), &stats) {
            licensed.insert(gene);
        }
    }
    let constraint_penalty = t
        .constraints()
        .iter()
        .filter(|c| {
            session.prereq_entailed(c.id, &stats) && !session.justif_blocked(c.id, 1, &stats)
        })
        .count() as u32;
    MaskFacts {
        licensed,
        constraint_penalty,
        query_cost: stats.asked_count(),
    }
}

/// Certifies a chromosome: zero evaluation penalty over the encoded
/// defaults, no constraint default fires, and the generating set is
/// grounded. A certified candidate is an extension of the base theory.
pub fn verify_extension(
    g: &Chromosome,
    t: &PreprocessedTheory,
    repr: Representation,
    stats: &QueryStats,
) -> Result<Verdict, LengthMismatch> {
    let breakdown = crate::ga::evaluate_detailed(g, t, repr, stats)?;
    if breakdown.table_penalty > 0 {
        return Ok(Verdict::Rejected(Rejection::Penalty {
            penalty: breakdown.table_penalty,
        }));
    }
    let base = breakdown.cgd.mask();
    for c in t.constraints() {
        if constraint_violated(t, base, c.id, stats) {
            return Ok(Verdict::Rejected(Rejection::ConstraintViolated { id: c.id }));
        }
    }
    match is_grounded(&breakdown.cgd, t, stats) {
        GroundednessWitness::Grounded { .. } => {
            let generators = crate::queries::generator_formulas(t.base(), base);
            Ok(Verdict::Certified {
                cgd: breakdown.cgd,
                generators,
            })
        }
        GroundednessWitness::Ungrounded { residue, .. } => {
            Ok(Verdict::Rejected(Rejection::NotGrounded { residue }))
        }
    }
}

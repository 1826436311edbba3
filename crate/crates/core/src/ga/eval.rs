//! Candidate evaluation.
//!
//! Each encoded default contributes one of sixteen cases, classified from its
//! bit pair together with two deduction facts about the candidate extension
//! `CE(G)`: whether the prerequisite is entailed and whether some negated
//! justification is. A unit penalty fires exactly on cases 2, 3, 4 (the
//! default is selected but its application is not licensed) and 5, 9, 13
//! (the default must fire under `CE(G)` yet is not selected) — equivalently,
//! whenever selection disagrees with licensed applicability. Every violated
//! constraint default adds one more penalty unit. The second fitness
//! component is the cardinality of the candidate generating set.

use super::Fitness;
use crate::candidate::{
    gene_selected, interpret, Chromosome, GeneratingSet, LengthMismatch, MaskFacts,
    Representation,
};
use crate::preprocess::PreprocessedTheory;
use crate::queries::QueryStats;

/// Cases of the sixteen-row evaluation table that carry a penalty.
pub const PENALTY_CASES: [u8; 6] = [2, 3, 4, 5, 9, 13];

#[derive(Clone, Debug)]
pub struct EvalBreakdown {
    /// Penalty units from encoded defaults.
    pub table_penalty: u32,
    /// Penalty units from violated constraint defaults.
    pub constraint_penalty: u32,
    pub cgd: GeneratingSet,
}

/// Case number (1..=16) of encoded default `gene` under the two-bit scheme.
///
/// Rows group by bit pair — `(1,0)` rows 1–4, `(1,1)` rows 5–8, `(0,1)` rows
/// 9–12, `(0,0)` rows 13–16 — and within a group by the deduction facts
/// `(⊢prereq, ⊢~justif)` in the order `(t,f), (t,t), (f,t), (f,f)`.
pub fn row_of(
    g: &Chromosome,
    gene: usize,
    t: &PreprocessedTheory,
    stats: &QueryStats,
) -> Result<u8, LengthMismatch> {
    let cgd = interpret(g, t, Representation::TwoBit)?;
    let d = &t.encoded()[gene];
    let q = t.queries();
    let a = q.prereq_entailed(cgd.mask(), d.id, stats);
    let b = q.justif_blocked(cgd.mask(), d.id, d.justifs.len(), stats);
    let group = match (g.get(2 * gene), g.get(2 * gene + 1)) {
        (true, false) => 0,
        (true, true) => 4,
        (false, true) => 8,
        (false, false) => 12,
    };
    let offset = match (a, b) {
        (true, false) => 0,
        (true, true) => 1,
        (false, true) => 2,
        (false, false) => 3,
    };
    Ok(group + offset + 1)
}

pub(crate) fn penalty_against(
    g: &Chromosome,
    genes: usize,
    repr: Representation,
    facts: &MaskFacts,
) -> (u32, u32) {
    let table = (0..genes)
        .filter(|&gene| gene_selected(g, gene, repr) != facts.licensed.contains(gene))
        .count() as u32;
    (table, facts.constraint_penalty)
}

pub fn evaluate_detailed(
    g: &Chromosome,
    t: &PreprocessedTheory,
    repr: Representation,
    stats: &QueryStats,
) -> Result<EvalBreakdown, LengthMismatch> {
    let cgd = interpret(g, t, repr)?;
    let facts = t.mask_facts(cgd.mask(), stats);
    let (table_penalty, constraint_penalty) =
        penalty_against(g, t.encoded().len(), repr, &facts);
    Ok(EvalBreakdown {
        table_penalty,
        constraint_penalty,
        cgd,
    })
}

/// The lexicographic fitness `(penalty sum, card(CGD))`; smaller is better.
pub fn evaluate(
    g: &Chromosome,
    t: &PreprocessedTheory,
    repr: Representation,
    stats: &QueryStats,
) -> Result<Fitness, LengthMismatch> {
    let b = evaluate_detailed(g, t, repr, stats)?;
    Ok(Fitness {
        penalty: b.table_penalty + b.constraint_penalty,
        cardinality: b.cgd.len() as u32,
    })
}

//! Entailment and consistency on top of the clausifier and the SAT kernel,
//! plus a block compiler that clausifies formulas once and answers many
//! queries over unions of blocks.

use super::cnf::{CnfBuilder, Lit, Var};
use super::sat::{satisfiable, Engine};
use super::Formula;
use std::collections::HashMap;

/// True iff `base ∪ {~goal}` is unsatisfiable.
pub fn entails<'a, I>(base: I, goal: &Formula) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut b = CnfBuilder::new();
    for f in base {
        b.assert(f, true);
    }
    b.assert(goal, false);
    let cs = b.into_clause_set();
    !super::sat::is_satisfiable(&cs)
}

/// True iff `base` is satisfiable; equals `!entails(base, False)`.
pub fn is_consistent<'a, I>(base: I) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut b = CnfBuilder::new();
    for f in base {
        b.assert(f, true);
    }
    let cs = b.into_clause_set();
    super::sat::is_satisfiable(&cs)
}

/// Handle to a compiled clause block.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockId(u32);

/// Clausifies formulas into reusable blocks sharing one variable space.
/// Asserting the union of blocks `{b_f : f ∈ S}` is equisatisfiable with the
/// conjunction of `S`, so entailment queries reduce to picking block subsets.
/// Compilation is an up-front, single-threaded phase; solving borrows the
/// prover immutably and holds per-call state only.
pub struct CompiledProver {
    builder: CnfBuilder,
    blocks: Vec<Vec<Vec<Lit>>>,
    memo: HashMap<(Formula, bool), BlockId>,
}

impl CompiledProver {
    pub fn new() -> CompiledProver {
        CompiledProver {
            builder: CnfBuilder::new(),
            blocks: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn block(&mut self, f: &Formula, value: bool) -> BlockId {
        if let Some(&id) = self.memo.get(&(f.clone(), value)) {
            return id;
        }
        let start = self.builder.clause_count();
        self.builder.assert(f, value);
        let clauses = self.builder.take_clauses_from(start);
        let id = BlockId(self.blocks.len() as u32);
        self.blocks.push(clauses);
        self.memo.insert((f.clone(), value), id);
        id
    }

    /// Block asserting that `f` holds.
    pub fn assert_block(&mut self, f: &Formula) -> BlockId {
        self.block(f, true)
    }

    /// Block asserting that `f` fails, i.e. asserting `~f`.
    pub fn refute_block(&mut self, f: &Formula) -> BlockId {
        self.block(f, false)
    }

    pub fn num_vars(&self) -> Var {
        self.builder.num_vars()
    }

    /// Satisfiability of the union of the given blocks.
    pub fn solve(&self, blocks: &[BlockId]) -> bool {
        let mut refs: Vec<&[Lit]> = Vec::new();
        for &BlockId(b) in blocks {
            for c in &self.blocks[b as usize] {
                refs.push(c.as_slice());
            }
        }
        satisfiable(&refs, self.builder.num_vars())
    }

    /// Opens a probe session over a fixed base: the base is loaded and
    /// propagated once, then each goal block is checked and retracted
    /// incrementally.
    pub fn session(&self, base: impl IntoIterator<Item = BlockId>) -> Session<'_> {
        let mut engine = Engine::new(self.builder.num_vars());
        for BlockId(b) in base {
            for c in &self.blocks[b as usize] {
                engine.add_clause(c);
            }
        }
        let base_ok = engine.seed_clauses(0) && engine.propagate();
        Session {
            blocks: &self.blocks,
            trail_mark: engine.mark(),
            clause_mark: engine.clause_mark(),
            base_ok,
            engine,
        }
    }
}

/// An incremental satisfiability session over one base. See
/// [`CompiledProver::session`].
pub struct Session<'p> {
    blocks: &'p Vec<Vec<Vec<Lit>>>,
    engine: Engine<'p>,
    trail_mark: usize,
    clause_mark: usize,
    base_ok: bool,
}

impl Session<'_> {
    /// Satisfiability of `base ∪ goal`; `None` probes the base alone.
    pub fn sat_with(&mut self, goal: Option<BlockId>) -> bool {
        if !self.base_ok {
            return false;
        }
        match goal {
            None => {
                let sat = self.engine.search();
                self.engine.undo_to(self.trail_mark);
                sat
            }
            Some(BlockId(b)) => {
                for c in &self.blocks[b as usize] {
                    self.engine.add_clause(c);
                }
                let sat = self.engine.seed_clauses(self.clause_mark) && self.engine.search();
                self.engine.undo_to(self.trail_mark);
                self.engine.pop_clauses(self.clause_mark);
                sat
            }
        }
    }
}

impl Default for CompiledProver {
    fn default() -> Self {
        Self::new()
    }
}

//! Clausification. Structural (Tseitin-style) transformation: gate variables
//! keep the clause set linear in formula size while preserving satisfiability,
//! which is all the entailment kernel needs. Formulas already in clause shape
//! (disjunctions of literals) are emitted directly without auxiliary variables.

use super::{Atom, Formula};
use std::collections::HashMap;
use std::fmt;

pub type Var = u32;

/// A literal packed as `var << 1 | negated`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var << 1 | u32::from(!positive))
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive() { "" } else { "-" }, self.var())
    }
}

/// A set of clauses over variables `0..num_vars`. Tautological clauses are
/// dropped and duplicate literals removed at construction.
#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    clauses: Vec<Vec<Lit>>,
    num_vars: Var,
}

impl ClauseSet {
    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_vars(&self) -> Var {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }
}

/// Normalizes a clause: sorted, deduplicated, `None` if tautological.
fn normalize_clause(mut lits: Vec<Lit>) -> Option<Vec<Lit>> {
    lits.sort_unstable();
    lits.dedup();
    // after sorting, complementary literals of one var are adjacent
    if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
        return None;
    }
    Some(lits)
}

#[derive(Clone, Copy)]
enum Enc {
    Const(bool),
    Lit(Lit),
}

impl Enc {
    fn negate(self) -> Enc {
        match self {
            Enc::Const(b) => Enc::Const(!b),
            Enc::Lit(l) => Enc::Lit(l.negate()),
        }
    }
}

/// Incremental clausifier. Atom-to-variable mapping is shared across every
/// formula passed through one builder, so asserted formulas compose.
pub(crate) struct CnfBuilder {
    vars: HashMap<Atom, Var>,
    next_var: Var,
    clauses: Vec<Vec<Lit>>,
}

impl CnfBuilder {
    pub fn new() -> CnfBuilder {
        CnfBuilder {
            vars: HashMap::new(),
            next_var: 0,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> Var {
        self.next_var
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn take_clauses_from(&mut self, start: usize) -> Vec<Vec<Lit>> {
        self.clauses.split_off(start)
    }

    fn var_for(&mut self, atom: Atom) -> Var {
        if let Some(&v) = self.vars.get(&atom) {
            return v;
        }
        let v = self.next_var;
        self.next_var += 1;
        self.vars.insert(atom, v);
        v
    }

    fn fresh(&mut self) -> Var {
        let v = self.next_var;
        self.next_var += 1;
        v
    }

    fn push_clause(&mut self, lits: Vec<Lit>) {
        if let Some(c) = normalize_clause(lits) {
            self.clauses.push(c);
        }
    }

    fn push_enc_clause(&mut self, encs: &[Enc]) {
        let mut lits = Vec::with_capacity(encs.len());
        for e in encs {
            match e {
                Enc::Const(true) => return, // clause satisfied
                Enc::Const(false) => {}
                Enc::Lit(l) => lits.push(*l),
            }
        }
        self.push_clause(lits);
    }

    /// Asserts that `f` has truth value `value`.
    pub fn assert(&mut self, f: &Formula, value: bool) {
        match (f, value) {
            (Formula::True, true) | (Formula::False, false) => {}
            (Formula::True, false) | (Formula::False, true) => self.push_clause(Vec::new()),
            (Formula::Not(g), v) => self.assert(g, !v),
            (Formula::And(a, b), true) => {
                self.assert(a, true);
                self.assert(b, true);
            }
            (Formula::Or(a, b), false) => {
                self.assert(a, false);
                self.assert(b, false);
            }
            (Formula::Implies(a, b), false) => {
                self.assert(a, true);
                self.assert(b, false);
            }
            (Formula::And(a, b), false) => {
                let (ea, eb) = (self.encode(a), self.encode(b));
                self.push_enc_clause(&[ea.negate(), eb.negate()]);
            }
            (Formula::Or(..), true) | (Formula::Implies(..), true) => {
                // flatten the asserted disjunction into one clause
                let mut encs = Vec::new();
                self.disjuncts(f, &mut encs);
                self.push_enc_clause(&encs);
            }
            (Formula::Atom(a), v) => {
                let var = self.var_for(*a);
                self.push_clause(vec![Lit::new(var, v)]);
            }
        }
    }

    fn disjuncts(&mut self, f: &Formula, out: &mut Vec<Enc>) {
        match f {
            Formula::Or(a, b) => {
                self.disjuncts(a, out);
                self.disjuncts(b, out);
            }
            Formula::Implies(a, b) => {
                let ea = self.encode(a);
                out.push(ea.negate());
                self.disjuncts(b, out);
            }
            _ => {
                let e = self.encode(f);
                out.push(e);
            }
        }
    }

    /// Returns a literal equivalent to `f`, adding gate clauses as needed.
    fn encode(&mut self, f: &Formula) -> Enc {
        match f {
            Formula::True => Enc::Const(true),
            Formula::False => Enc::Const(false),
            Formula::Atom(a) => {
                let v = self.var_for(*a);
                Enc::Lit(Lit::new(v, true))
            }
            Formula::Not(g) => self.encode(g).negate(),
            Formula::And(a, b) => {
                let (ea, eb) = (self.encode(a), self.encode(b));
                self.and_gate(ea, eb)
            }
            Formula::Or(a, b) => {
                let (ea, eb) = (self.encode(a), self.encode(b));
                self.and_gate(ea.negate(), eb.negate()).negate()
            }
            Formula::Implies(a, b) => {
                let (ea, eb) = (self.encode(a), self.encode(b));
                self.and_gate(ea, eb.negate()).negate()
            }
        }
    }

    /// `x <-> (a & b)` for non-constant inputs.
    fn and_gate(&mut self, a: Enc, b: Enc) -> Enc {
        match (a, b) {
            (Enc::Const(false), _) | (_, Enc::Const(false)) => Enc::Const(false),
            (Enc::Const(true), e) | (e, Enc::Const(true)) => e,
            (Enc::Lit(la), Enc::Lit(lb)) => {
                let x = Lit::new(self.fresh(), true);
                self.push_clause(vec![x.negate(), la]);
                self.push_clause(vec![x.negate(), lb]);
                self.push_clause(vec![x, la.negate(), lb.negate()]);
                Enc::Lit(x)
            }
        }
    }

    pub fn into_clause_set(self) -> ClauseSet {
        ClauseSet {
            clauses: self.clauses,
            num_vars: self.next_var,
        }
    }
}

/// Converts one formula to an equisatisfiable clause set.
pub fn to_cnf(f: &Formula) -> ClauseSet {
    let mut b = CnfBuilder::new();
    b.assert(f, true);
    b.into_clause_set()
}

//! Complete satisfiability search: DPLL with unit propagation over
//! occurrence lists.
//!
//! The engine supports incremental probing: clauses and assignments added
//! after a mark can be retracted exactly, so one propagated base serves many
//! goal queries. Engine state is owned by its session; concurrent sessions
//! never interfere.

use super::cnf::{ClauseSet, Lit, Var};

pub(crate) struct Engine<'a> {
    clauses: Vec<&'a [Lit]>,
    occ: Vec<Vec<u32>>, // literal code -> indices of clauses containing it
    value: Vec<i8>,     // var -> 0 unknown, 1 true, -1 false
    trail: Vec<Var>,
    qhead: usize,
}

impl<'a> Engine<'a> {
    pub fn new(num_vars: Var) -> Engine<'a> {
        Engine {
            clauses: Vec::new(),
            occ: vec![Vec::new(); 2 * num_vars as usize],
            value: vec![0; num_vars as usize],
            trail: Vec::new(),
            qhead: 0,
        }
    }

    pub fn add_clause(&mut self, c: &'a [Lit]) {
        let idx = self.clauses.len() as u32;
        self.clauses.push(c);
        for l in c {
            self.occ[l.code()].push(idx);
        }
    }

    pub fn clause_mark(&self) -> usize {
        self.clauses.len()
    }

    /// Retracts every clause added after `mark`.
    pub fn pop_clauses(&mut self, mark: usize) {
        while self.clauses.len() > mark {
            let c = self.clauses.pop().unwrap();
            for l in c {
                let popped = self.occ[l.code()].pop();
                debug_assert_eq!(popped, Some(self.clauses.len() as u32));
            }
        }
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo_to(&mut self, mark: usize) {
        for &v in &self.trail[mark..] {
            self.value[v as usize] = 0;
        }
        self.trail.truncate(mark);
        self.qhead = mark;
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var() as usize];
        if l.positive() {
            v
        } else {
            -v
        }
    }

    /// Records an assignment; false if it contradicts the current one.
    fn enqueue(&mut self, l: Lit) -> bool {
        match self.lit_value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.value[l.var() as usize] = if l.positive() { 1 } else { -1 };
                self.trail.push(l.var());
                true
            }
        }
    }

    /// Brings the clauses added after `mark` into the current state: false on
    /// an immediate conflict (empty, falsified, or contradicting unit).
    pub fn seed_clauses(&mut self, mark: usize) -> bool {
        for idx in mark..self.clauses.len() {
            let clause = self.clauses[idx];
            let mut unit = None;
            let mut open = 0;
            let mut satisfied = false;
            for &l in clause {
                match self.lit_value(l) {
                    1 => {
                        satisfied = true;
                        break;
                    }
                    0 => {
                        open += 1;
                        unit = Some(l);
                    }
                    _ => {}
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return false,
                1 if !self.enqueue(unit.unwrap()) => return false,
                _ => {}
            }
        }
        true
    }

    pub fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let var = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = Lit::new(var, self.value[var as usize] < 0);
            for ci in 0..self.occ[falsified.code()].len() {
                let idx = self.occ[falsified.code()][ci] as usize;
                let clause = self.clauses[idx];
                let mut unit = None;
                let mut open = 0;
                let mut satisfied = false;
                for &l in clause {
                    match self.lit_value(l) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            unit = Some(l);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match open {
                    0 => return false,
                    1 if !self.enqueue(unit.unwrap()) => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// First unassigned literal of the first unsatisfied clause, if any.
    fn pick(&self) -> Option<Lit> {
        for clause in &self.clauses {
            let mut unassigned = None;
            let mut satisfied = false;
            for &l in *clause {
                match self.lit_value(l) {
                    1 => {
                        satisfied = true;
                        break;
                    }
                    0 if unassigned.is_none() => unassigned = Some(l),
                    _ => {}
                }
            }
            if !satisfied {
                // propagation already caught all-false clauses
                return Some(unassigned.expect("unsatisfied clause with no open literal"));
            }
        }
        None
    }

    /// Complete search from the current state. Leaves assignments on the
    /// trail; callers undo to their mark.
    pub fn search(&mut self) -> bool {
        if !self.propagate() {
            return false;
        }
        let Some(lit) = self.pick() else {
            return true;
        };
        let mark = self.trail.len();
        self.enqueue(lit);
        if self.search() {
            return true;
        }
        self.undo_to(mark);
        self.enqueue(lit.negate());
        if self.search() {
            return true;
        }
        self.undo_to(mark);
        false
    }
}

pub(crate) fn satisfiable(clauses: &[&[Lit]], num_vars: Var) -> bool {
    let mut engine = Engine::new(num_vars);
    for c in clauses {
        engine.add_clause(c);
    }
    engine.seed_clauses(0) && engine.search()
}

/// Complete decision procedure: true iff some assignment satisfies every
/// clause.
pub fn is_satisfiable(cs: &ClauseSet) -> bool {
    let refs: Vec<&[Lit]> = cs.clauses().iter().map(|c| c.as_slice()).collect();
    satisfiable(&refs, cs.num_vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, to_cnf};

    fn sat(src: &str) -> bool {
        is_satisfiable(&to_cnf(&parse_formula(src).unwrap()))
    }

    #[test]
    fn empty_set_is_satisfiable() {
        assert!(is_satisfiable(&to_cnf(&crate::formula::Formula::True)));
    }

    #[test]
    fn empty_clause_is_unsatisfiable() {
        assert!(!is_satisfiable(&to_cnf(&crate::formula::Formula::False)));
    }

    #[test]
    fn small_instances() {
        assert!(!sat("(a | b) & ~a & ~b"));
        assert!(sat("(a | b) & ~a"));
        assert!(!sat("a & ~a"));
        assert!(sat("(a -> b) & (b -> c) & a & c"));
        assert!(!sat("(a -> b) & (b -> c) & a & ~c"));
        assert!(!sat("(a | b | c) & (~a | b) & (~b | c) & (~c | ~b) & ~c & ~a"));
    }

    #[test]
    fn pigeonhole_two_into_one() {
        // two pigeons, one hole
        assert!(!sat("p1h1 & p2h1 & (~p1h1 | ~p2h1)"));
    }

    #[test]
    fn incremental_probes_restore_state() {
        // base: (a | b) & ~a, goals probed and retracted repeatedly;
        // one builder keeps the variable space shared
        let mut b = crate::formula::cnf::CnfBuilder::new();
        b.assert(&parse_formula("(a | b) & ~a").unwrap(), true);
        let base = b.take_clauses_from(0);
        b.assert(&parse_formula("~b").unwrap(), true);
        let goal_unsat = b.take_clauses_from(0);
        b.assert(&parse_formula("b").unwrap(), true);
        let goal_sat = b.take_clauses_from(0);

        let mut engine = Engine::new(b.num_vars());
        for c in &base {
            engine.add_clause(c);
        }
        assert!(engine.seed_clauses(0) && engine.propagate());
        let tmark = engine.mark();
        let cmark = engine.clause_mark();
        for _ in 0..3 {
            for c in &goal_unsat {
                engine.add_clause(c);
            }
            let ok = engine.seed_clauses(cmark) && engine.search();
            engine.undo_to(tmark);
            engine.pop_clauses(cmark);
            assert!(!ok);

            for c in &goal_sat {
                engine.add_clause(c);
            }
            let ok = engine.seed_clauses(cmark) && engine.search();
            engine.undo_to(tmark);
            engine.pop_clauses(cmark);
            assert!(ok);
        }
    }
}

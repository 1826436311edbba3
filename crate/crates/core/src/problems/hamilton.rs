//! Hamiltonian-cycle instances as default theories.
//!
//! The walk is pinned to start at vertex 0. Atom `at{v}_{k}` says the walk
//! sits on vertex `v` after `k` steps, `use{v}_{w}` that edge `(v,w)` is
//! taken. One edge-choice default per edge and feasible step,
//!
//! ```text
//! at{v}_k : use{v}_{w} / at{w}_{k+1} & use{v}_{w}
//! ```
//!
//! chains the walk forward: its prerequisite is only provable once the walk
//! reaches `v` at step `k`. Steps are trimmed so vertex 0 can only be left
//! at step 0 and re-entered at step `n`. The facts carry `at0_0` plus
//! mutual-exclusion clauses — one outgoing edge per vertex, no vertex
//! revisits — which block every over-committed candidate, and a
//! self-blocking default keeps only candidate extensions proving `at0_n`,
//! i.e. walks that return home after exactly `n` steps. Extensions then
//! correspond one-to-one with the directed Hamiltonian cycles of the graph,
//! each one a single chain of defaults.

use crate::formula::Formula;
use crate::theory::DefaultTheory;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop ({0},{0}) not allowed in a simple digraph")]
    SelfLoop(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("graph needs at least one vertex")]
    Empty,
}

/// A generated instance plus the decoding map from default ids back to edge
/// moves `(from, to, step)`.
#[derive(Clone, Debug)]
pub struct HamiltonInstance {
    pub theory: DefaultTheory,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    moves: Vec<Option<(usize, usize, usize)>>,
}

fn at(v: usize, k: usize) -> Formula {
    Formula::atom(&format!("at{v}_{k}"))
}

fn used(v: usize, w: usize) -> Formula {
    Formula::atom(&format!("use{v}_{w}"))
}

fn nor(a: Formula, b: Formula) -> Formula {
    Formula::or(Formula::not(a), Formula::not(b))
}

pub fn generate_hamilton(n: usize, edges: &[(usize, usize)]) -> Result<HamiltonInstance, HamiltonError> {
    if n == 0 {
        return Err(HamiltonError::Empty);
    }
    let mut seen = HashSet::new();
    for &(v, w) in edges {
        if v >= n {
            return Err(HamiltonError::VertexOutOfRange(v, n));
        }
        if w >= n {
            return Err(HamiltonError::VertexOutOfRange(w, n));
        }
        if v == w {
            return Err(HamiltonError::SelfLoop(v));
        }
        if !seen.insert((v, w)) {
            return Err(HamiltonError::DuplicateEdge(v, w));
        }
    }

    let mut facts = vec![at(0, 0)];
    // no vertex other than 0 is visited twice; vertex 0 never appears
    // mid-walk because no feasible default targets it there
    for v in 1..n {
        for k in 1..n.saturating_sub(1) {
            for j in k + 1..n {
                facts.push(nor(at(v, k), at(v, j)));
            }
        }
    }
    // at most one outgoing edge per vertex
    for v in 0..n {
        let outs: Vec<usize> = edges.iter().filter(|(a, _)| *a == v).map(|(_, b)| *b).collect();
        for (i, &w1) in outs.iter().enumerate() {
            for &w2 in &outs[i + 1..] {
                facts.push(nor(used(v, w1), used(v, w2)));
            }
        }
    }

    // edge-choice defaults at every feasible step
    let mut rules: Vec<(Formula, Vec<Formula>, Formula)> = Vec::new();
    let mut moves: Vec<Option<(usize, usize, usize)>> = Vec::new();
    for k in 0..n {
        for &(v, w) in edges {
            let feasible = if v == 0 {
                k == 0
            } else if w == 0 {
                k == n - 1
            } else {
                (1..=n.saturating_sub(2)).contains(&k)
            };
            if !feasible {
                continue;
            }
            rules.push((
                at(v, k),
                vec![used(v, w)],
                Formula::and(at(w, k + 1), used(v, w)),
            ));
            moves.push(Some((v, w, k)));
        }
    }
    // keep only candidates that close the cycle: at0_n must hold
    rules.push((Formula::True, vec![Formula::not(at(0, n))], at(0, n)));
    moves.push(None);

    Ok(HamiltonInstance {
        theory: DefaultTheory::new(facts, rules),
        n,
        edges: edges.to_vec(),
        moves,
    })
}

impl HamiltonInstance {
    /// The edge move a default id stands for, `None` for the closure
    /// constraint.
    pub fn move_of(&self, id: usize) -> Option<(usize, usize, usize)> {
        self.moves.get(id).copied().flatten()
    }

    /// Reads a Hamiltonian cycle out of a generating default set: the visit
    /// order starting at vertex 0. `None` when the set is not a single
    /// vertex-disjoint closed chain over all `n` vertices.
    pub fn decode_cycle(&self, generating_ids: &[usize]) -> Option<Vec<usize>> {
        let mut moves: Vec<(usize, usize, usize)> = generating_ids
            .iter()
            .filter_map(|&id| self.move_of(id))
            .collect();
        if moves.len() != self.n {
            return None;
        }
        moves.sort_by_key(|&(_, _, k)| k);
        let mut visit = Vec::with_capacity(self.n);
        let mut current = 0;
        for (step, &(v, w, k)) in moves.iter().enumerate() {
            if k != step || v != current || !self.edges.contains(&(v, w)) {
                return None;
            }
            visit.push(v);
            current = w;
        }
        if current != 0 {
            return None;
        }
        let distinct: HashSet<usize> = visit.iter().copied().collect();
        if distinct.len() != self.n {
            return None;
        }
        Some(visit)
    }
}

/// Parses an edge list like `0-1,1-2,2-0`.
pub fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .trim()
                .split_once('-')
                .ok_or_else(|| format!("edge {pair:?} is not of the form FROM-TO"))?;
            let from = a.trim().parse().map_err(|_| format!("bad vertex {a:?}"))?;
            let to = b.trim().parse().map_err(|_| format!("bad vertex {b:?}"))?;
            Ok((from, to))
        })
        .collect()
}

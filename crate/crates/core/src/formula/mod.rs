//! Propositional formulas: atoms, connectives, parsing, clausification and
//! a complete satisfiability/entailment kernel.

mod cnf;
mod parse;
mod prover;
mod sat;

pub use cnf::{to_cnf, ClauseSet, Lit, Var};
pub use parse::{parse_formula, ParseError};
pub(crate) use parse::line_col;
pub use prover::{entails, is_consistent, BlockId, CompiledProver, Session};
pub use sat::is_satisfiable;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// An interned propositional variable. Equal names always map to the same id,
/// so atoms compare and hash as plain integers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        RwLock::new(Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

/// True for `[a-zA-Z][a-zA-Z0-9_]*` that is not a reserved constant.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "true"
        && s != "false"
}

impl Atom {
    /// Interns `name`. Panics if `name` is not a valid identifier.
    pub fn new(name: &str) -> Atom {
        assert!(is_identifier(name), "invalid atom name: {name:?}");
        {
            let int = interner().read().unwrap();
            if let Some(&id) = int.ids.get(name) {
                return Atom(id);
            }
        }
        let mut int = interner().write().unwrap();
        if let Some(&id) = int.ids.get(name) {
            return Atom(id);
        }
        let id = int.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        int.names.push(name.clone());
        int.ids.insert(name, id);
        Atom(id)
    }

    pub fn name(&self) -> Arc<str> {
        interner().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Propositional formula over interned atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction of `items`, `True` when empty.
    pub fn conjoin(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Disjunction of `items`, `False` when empty.
    pub fn disjoin(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn atoms_into(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(*a);
            }
            Formula::Not(g) => g.atoms_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.atoms_into(&mut out);
        out
    }

    /// Rewrites every `~~f` subterm to `f`.
    pub fn strip_double_negation(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(g) => match g.strip_double_negation() {
                Formula::Not(inner) => *inner,
                other => Formula::not(other),
            },
            Formula::And(a, b) => {
                Formula::and(a.strip_double_negation(), b.strip_double_negation())
            }
            Formula::Or(a, b) => Formula::or(a.strip_double_negation(), b.strip_double_negation()),
            Formula::Implies(a, b) => {
                Formula::implies(a.strip_double_negation(), b.strip_double_negation())
            }
        }
    }
}

// Precedence levels used by the printer; `->` is lowest and right-associative.
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_NOT: u8 = 4;

fn fmt_prec(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = match f {
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(..) => PREC_NOT,
        _ => PREC_NOT + 1,
    };
    let parens = prec < min;
    if parens {
        write!(out, "(")?;
    }
    match f {
        Formula::True => write!(out, "true")?,
        Formula::False => write!(out, "false")?,
        Formula::Atom(a) => write!(out, "{a}")?,
        Formula::Not(g) => {
            write!(out, "~")?;
            fmt_prec(g, PREC_NOT, out)?;
        }
        Formula::And(a, b) => {
            fmt_prec(a, PREC_AND, out)?;
            write!(out, " & ")?;
            fmt_prec(b, PREC_AND + 1, out)?;
        }
        Formula::Or(a, b) => {
            fmt_prec(a, PREC_OR, out)?;
            write!(out, " | ")?;
            fmt_prec(b, PREC_OR + 1, out)?;
        }
        Formula::Implies(a, b) => {
            fmt_prec(a, PREC_IMPLIES + 1, out)?;
            write!(out, " -> ")?;
            fmt_prec(b, PREC_IMPLIES, out)?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

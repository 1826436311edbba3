//! Extension search for propositional default theories.
//!
//! A default theory pairs certain facts `W` with default rules
//! `prereq : justif, ... / conseq`. Its extensions — deductively closed sets
//! of plausible conclusions — are found here with a genetic search over
//! bitstring-encoded candidate generating default sets, certified by a
//! groundedness check, and cross-checked by an exhaustive fixpoint oracle on
//! small instances.

pub mod candidate;
pub mod formula;
pub mod ga;
pub mod oracle;
pub mod preprocess;
pub mod problems;
pub mod queries;
pub mod runner;
pub mod theory;

pub use candidate::{Chromosome, GeneratingSet, Representation};
pub use formula::{Atom, Formula};
pub use preprocess::PreprocessedTheory;
pub use theory::{Default, DefaultTheory};

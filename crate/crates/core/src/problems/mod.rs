//! Built-in benchmark problem generators.

mod hamilton;
mod people;

pub use hamilton::{generate_hamilton, parse_edges, HamiltonError, HamiltonInstance};
pub use people::{generate_people, PeopleVariant, UnknownVariant};

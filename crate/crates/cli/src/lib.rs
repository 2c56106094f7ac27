//! Text and JSON formats and the `hornfit` command line.

pub mod cli;
pub mod format;
pub mod report;
pub mod sexp;

pub use cli::run;
pub use format::{parse_abox, parse_concept, parse_instance, parse_ontology, parse_query, serialize_instance, serialize_ontology, Flavor};

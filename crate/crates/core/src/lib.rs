//! Fitting Horn description-logic ontologies to labeled examples.
//!
//! An example pairs an ABox with a query (or with nothing, in consistency
//! mode). A collection of positive and negative examples *fits* an ontology
//! when every positive query is entailed and no negative one is. This crate
//! decides fitting for the logics EL, EL⊥, ELI and ELI⊥ with consistency,
//! atomic, conjunctive and union-of-conjunctive queries, synthesizes a
//! fitting ontology when one exists, and checks candidate ontologies
//! independently of the deciders.
//!
//! Module map:
//! - [`syntax`], [`interp`], [`query`], [`eval`]: concepts, interpretations,
//!   queries and their semantics.
//! - [`sim`]: greatest (k-bounded) simulations.
//! - [`construct`]: products, unravelings, characteristic and tree concepts.
//! - [`entail`]: the EL chase, forest variations, bounded ELI reasoning.
//! - [`fit`]: deciders, synthesizers, the coloring generator, verification.

pub mod construct;
pub mod entail;
pub mod error;
pub mod eval;
pub mod fit;
pub mod interp;
pub mod query;
pub mod sim;
pub mod syntax;

#[cfg(feature = "testing")]
pub mod testing;

pub use error::{Error, Result};
pub use interp::{Elem, Interpretation, PointedInterp, Signature};
pub use query::{ABox, Assertion, Cq, ElQuery, Example, ExampleCollection, QAtom, QueryLang, Term, Ucq};
pub use syntax::{Base, Ci, Concept, ConceptKind, Logic, Ontology, Role, SimQuant, Sym};

/// Prefix reserved for symbols invented by the library (auxiliary roles,
/// concept names of the polynomial encodings). User input may not use it.
pub const RESERVED_PREFIX: &str = "_";

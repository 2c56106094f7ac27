//! Query entailment: the EL chase, forest variations of CQs with their
//! reduction queries, and bounded reasoning for ELI.

pub mod bounded;
pub mod chase;
pub mod variation;

pub use bounded::{eli_entailment_bounded, find_countermodel, tree_chase, Entailment, Goal, TreeChase};
pub use chase::{check_chase_input, chase_universal_model, entailing_variation, entails_el_query, ucq_entailed_by_universal, ucq_variations, UniversalModel};
pub use variation::{enum_forest_variations, is_forest_variation, reduction_queries, ReductionQuery, Variation};

//! Independent check that an ontology fits a collection, and replay of NO
//! certificates.
//!
//! Ontologies the EL chase accepts are checked exactly. All others go
//! through bounded ELI reasoning and may come out unknown.

use std::fmt;

use crate::entail::{chase_universal_model, check_chase_input, eli_entailment_bounded, ucq_entailed_by_universal, Entailment, Goal};
use crate::error::{Error, Result};
use crate::fit::aq::refutation_completion;
use crate::fit::consistency::union_of;
use crate::fit::{decide, Certificate, FitConfig, FitDecision, Verdict};
use crate::query::{ABox, ExampleCollection, Ucq};
use crate::sim::audit_simulation;
use crate::syntax::{Base, Logic, Ontology};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn tag(self) -> &'static str {
        match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        }
    }

    fn negate(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

/// Per-example outcome: whether the example is satisfied (positive query
/// entailed, negative query not entailed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub overall: Tri,
    pub positives: Vec<Tri>,
    pub negatives: Vec<Tri>,
}

/// Whether `A ∪ O` entails the query (inconsistency when there is none).
pub fn entailment(abox: &ABox, q: Option<&Ucq>, o: &Ontology, bottom: bool, cfg: &FitConfig) -> Result<Tri> {
    if check_chase_input(o).is_ok() {
        return match q {
            None => Ok(chase_universal_model(abox, o)?.inconsistent.into()),
            Some(q) => Ok(ucq_entailed_by_universal(abox, o, q, Logic { base: Base::El, bottom })?.into()),
        };
    }
    let goal = q.map_or(Goal::Inconsistency, Goal::Ucq);
    let bound = abox.individuals().len() + cfg.model_extra;
    Ok(match eli_entailment_bounded(abox, o, goal, cfg.chase_depth, bound)? {
        Entailment::Entailed => Tri::True,
        Entailment::NotEntailed(_) => Tri::False,
        Entailment::Unknown => Tri::Unknown,
    })
}

pub fn verify_fit(o: &Ontology, e: &ExampleCollection, cfg: &FitConfig) -> Result<VerifyReport> {
    let mut positives = Vec::new();
    for p in &e.positives {
        let t = entailment(&p.abox, p.query.as_ref(), o, e.logic.bottom, cfg)?;
        // In consistency mode positives must stay consistent.
        positives.push(if p.query.is_none() { t.negate() } else { t });
    }
    let mut negatives = Vec::new();
    for n in &e.negatives {
        let t = entailment(&n.abox, n.query.as_ref(), o, e.logic.bottom, cfg)?;
        negatives.push(if n.query.is_none() { t } else { t.negate() });
    }
    let all: Vec<Tri> = positives.iter().chain(&negatives).copied().collect();
    let overall = if all.contains(&Tri::False) {
        Tri::False
    } else if all.contains(&Tri::Unknown) {
        Tri::Unknown
    } else {
        Tri::True
    };
    Ok(VerifyReport { overall, positives, negatives })
}

/// Re-derives the reason given for a NO answer.
pub fn replay_certificate(e: &ExampleCollection, d: &FitDecision, cfg: &FitConfig) -> Result<bool> {
    let cert = d.certificate.as_ref().ok_or_else(|| Error::Invalid("decision carries no certificate".into()))?;
    match cert {
        Certificate::Simulation { negative, pairs } => {
            let src = e.negatives.get(*negative).ok_or_else(|| Error::Invalid("no such negative".into()))?.abox.to_interpretation();
            let plus = union_of(&e.positives)?;
            let mut rel = std::collections::BTreeSet::new();
            for (a, b) in pairs {
                match (src.element_by_name(a), plus.element_by_name(b)) {
                    (Some(x), Some(y)) => {
                        rel.insert((x, y));
                    }
                    _ => return Ok(false),
                }
            }
            let logic = Logic { base: e.logic.base, bottom: true };
            Ok(audit_simulation(logic, &src, &plus, &rel).is_ok())
        }
        Certificate::Derived { negative, assertion } => {
            let c = refutation_completion(e)?;
            let _ = negative;
            Ok(match assertion {
                crate::query::Assertion::Concept(q, a) => c.individual(a).is_some_and(|x| c.labels(x).contains(q)),
                crate::query::Assertion::Role(..) => false,
            })
        }
        Certificate::NoBottom { negative } => Ok(!e.logic.bottom && *negative < e.negatives.len()),
        Certificate::Exhausted { .. } | Certificate::FullOntologyFails { .. } => Ok(decide(e, cfg)?.verdict == Verdict::No),
    }
}

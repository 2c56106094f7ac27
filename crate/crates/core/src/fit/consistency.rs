//! Fitting in consistency mode: positives must stay consistent, negatives
//! must become inconsistent.
//!
//! A fit exists iff no negative ABox simulates totally into the union of
//! the positive ones. Then each negative has an individual that no positive
//! element simulates, and its characteristic concept implies ⊥.

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fit::{require_lang, CharCi, Certificate, FitConfig, FitDecision, Verdict};
use crate::interp::Interpretation;
use crate::query::{Example, ExampleCollection, QueryLang};
use crate::sim::SimTable;
use crate::syntax::{Ci, Concept, Role};

pub(crate) fn union_of(examples: &[Example]) -> Result<Interpretation> {
    let parts: Vec<Interpretation> = examples.iter().map(|x| x.abox.to_interpretation()).collect();
    Ok(Interpretation::disjoint_union(&parts)?.0)
}

pub fn decide_consistency_fit(e: &ExampleCollection, cfg: &FitConfig) -> Result<FitDecision> {
    require_lang(e, &[QueryLang::Consistency])?;
    e.require_disjoint()?;
    if e.negatives.is_empty() {
        return Ok(FitDecision::yes(Vec::new(), Vec::new()));
    }
    if !e.logic.bottom {
        return Ok(FitDecision::no(Certificate::NoBottom { negative: 0 }));
    }
    let base = e.logic.base;
    if e.positives.is_empty() {
        // Nothing has to stay consistent: the labels of any individual do.
        let cis = e
            .negatives
            .iter()
            .map(|n| CharCi { source: Arc::new(n.abox.to_interpretation()), elem: 0, depth: 0, base, rhs: Concept::bot() })
            .collect();
        return Ok(FitDecision::yes(cis, Vec::new()));
    }
    let plus = union_of(&e.positives)?;
    let max_neg = e.negatives.iter().map(|n| n.abox.individuals().len()).max().unwrap_or(0);
    let mut cis = Vec::new();
    for (j, n) in e.negatives.iter().enumerate() {
        let src = n.abox.to_interpretation();
        let table = SimTable::compute(base, &src, &plus);
        if table.total_at(None) {
            let pairs = table.supported(base, &src, &plus).named_pairs(&src, &plus);
            return Ok(FitDecision::no(Certificate::Simulation { negative: j, pairs }));
        }
        let a = table.unmatched()[0];
        let depth = cfg.depth_for(&table, a, plus.len(), max_neg);
        cis.push(CharCi { source: Arc::new(src), elem: a, depth, base, rhs: Concept::bot() });
    }
    Ok(FitDecision::yes(cis, Vec::new()))
}

fn vbar(i: &Interpretation, d: usize) -> Concept {
    Concept::atom(format!("_V.{}", i.element_name(d)))
}

/// The fitting ontology built from names `V̄_a` ("not simulated by `a`")
/// for the individuals `a` of the positive union, over the signature of the
/// negatives. It fits whenever any ontology does.
pub fn synth_alternative_consistency(e: &ExampleCollection, cfg: &FitConfig) -> Result<crate::syntax::Ontology> {
    if decide_consistency_fit(e, cfg)?.verdict != Verdict::Yes {
        return invalid("the examples admit no fitting ontology");
    }
    if e.positives.is_empty() {
        return invalid("the alternative ontology is built from the positive examples; there are none");
    }
    let plus = union_of(&e.positives)?;
    let sig = e.negative_signature();
    let mut cis = Vec::new();
    for d in plus.elements() {
        for a in &sig.concepts {
            if !plus.labels(d).contains(a) {
                cis.push(Ci::new(Concept::atom(a.clone()), vbar(&plus, d)));
            }
        }
        for r in &sig.roles {
            let mut roles = vec![Role::new(r.clone())];
            if e.logic.has_inverses() {
                roles.push(Role::inv(r.clone()));
            }
            for role in roles {
                let filler = Concept::and(plus.neighbors(d, &role).map(|x| vbar(&plus, x)));
                cis.push(Ci::new(Concept::exists(role, filler), vbar(&plus, d)));
            }
        }
    }
    cis.push(Ci::new(Concept::and(plus.elements().map(|d| vbar(&plus, d))), Concept::bot()));
    Ok(crate::syntax::Ontology::new(cis))
}

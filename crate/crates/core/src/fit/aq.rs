//! Fitting for atomic queries.
//!
//! The negatives are closed under the positives: whenever a positive
//! `(A, Q(a))` simulates into the current closure, `Q` is added to every
//! partner of `a`. The result is the least completion any fitting ontology
//! has to produce on the negatives, so a fit exists iff no negative query
//! ends up in it. Otherwise the closure itself is a model of the
//! synthesized ontology.

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fit::consistency::union_of;
use crate::fit::{require_lang, CharCi, Certificate, FitConfig, FitDecision};
use crate::interp::Interpretation;
use crate::query::{Assertion, Example, ExampleCollection, QueryLang};
use crate::sim::SimTable;
use crate::syntax::{Concept, Logic, Sym};

fn aq_of(x: &Example) -> Result<(Sym, Sym)> {
    match x.query.as_ref().and_then(|q| q.as_aq()) {
        Some((c, a)) => Ok((c.clone(), a.clone())),
        None => invalid("atomic-query fitting needs an atomic query on every example"),
    }
}

/// The closure of the disjoint union of the negatives under the rule
/// above (empty if there are no negatives). For ⊥-logics a positive only
/// fires when its simulation is total.
pub fn refutation_completion(e: &ExampleCollection) -> Result<Interpretation> {
    let mut c = union_of(&e.negatives)?;
    let pos: Vec<(Interpretation, Sym, Sym)> = e
        .positives
        .iter()
        .map(|p| aq_of(p).map(|(q, a)| (p.abox.to_interpretation(), q, a)))
        .collect::<Result<_>>()?;
    loop {
        let mut changed = false;
        for (src, q, a) in &pos {
            let table = SimTable::compute(e.logic.base, src, &c);
            if e.logic.bottom && !table.total_at(None) {
                continue;
            }
            let d = src.individual(a).expect("query individual occurs in the ABox");
            for b in c.elements() {
                if table.in_greatest(d, b) {
                    changed |= c.add_label(b, q);
                }
            }
        }
        if !changed {
            return Ok(c);
        }
    }
}

pub fn decide_aq_fit(e: &ExampleCollection, cfg: &FitConfig) -> Result<FitDecision> {
    require_lang(e, &[QueryLang::Aq])?;
    e.require_disjoint()?;
    let c = refutation_completion(e)?;
    for (j, n) in e.negatives.iter().enumerate() {
        let (q, a) = aq_of(n)?;
        let d = c.individual(&a).expect("negative individuals are in the completion");
        if c.labels(d).contains(&q) {
            let mut out = FitDecision::no(Certificate::Derived { negative: j, assertion: Assertion::Concept(q, a) });
            out.completion = Some(c);
            return Ok(out);
        }
    }
    let mut cis = Vec::new();
    for p in &e.positives {
        let (q, a) = aq_of(p)?;
        let src = p.abox.to_interpretation();
        let table = SimTable::compute(e.logic.base, &src, &c);
        let (elem, rhs) = if e.logic.bottom && !table.total_at(None) {
            (table.unmatched()[0], Concept::bot())
        } else {
            (src.individual(&a).expect("query individual occurs in the ABox"), Concept::atom(q))
        };
        let depth = cfg.depth_for(&table, elem, c.len(), src.len());
        cis.push(CharCi { source: Arc::new(src), elem, depth, base: e.logic.base, rhs });
    }
    let mut out = FitDecision::yes(cis, Vec::new());
    out.completion = Some(c);
    Ok(out)
}

/// Whether `c` is closed under the rule, i.e. contains everything it forces.
pub fn is_closed(e: &ExampleCollection, logic: Logic, c: &Interpretation) -> Result<bool> {
    for p in &e.positives {
        let (q, a) = aq_of(p)?;
        let src = p.abox.to_interpretation();
        let table = SimTable::compute(logic.base, &src, c);
        if logic.bottom && !table.total_at(None) {
            continue;
        }
        let d = src.individual(&a).expect("query individual occurs in the ABox");
        if c.elements().any(|b| table.in_greatest(d, b) && !c.labels(b).contains(&q)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{verify_fit, Tri, Verdict};
    use crate::query::{ABox, Ucq};

    /// Positive `{A1(a), B(b)} ⊢ A2(a)`, negative `{A1(a)} ⊢ A2(a)`.
    fn example(logic: Logic) -> ExampleCollection {
        let pos = ABox::new([Assertion::concept("A1", "a"), Assertion::concept("B", "b")]).unwrap();
        let neg = ABox::new([Assertion::concept("A1", "a")]).unwrap();
        ExampleCollection::new(
            vec![Example::with_query(pos, Ucq::aq("A2", "a")).unwrap()],
            vec![Example::with_query(neg, Ucq::aq("A2", "a")).unwrap()],
            logic,
            QueryLang::Aq,
        )
        .unwrap()
        .normalized()
    }

    #[test]
    fn bottom_logic_fits_by_making_the_positive_inconsistent() {
        let e = example(Logic::EL_BOT);
        let cfg = FitConfig::default();
        let d = decide_aq_fit(&e, &cfg).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(d.char_cis.len(), 1);
        assert!(d.char_cis[0].rhs.is_bot());
        assert_eq!(d.char_cis[0].element_name(), "p0:b");
        assert_eq!(verify_fit(d.ontology.as_ref().unwrap(), &e, &cfg).unwrap().overall, Tri::True);
    }

    #[test]
    fn without_bottom_the_negative_query_is_derived() {
        for logic in [Logic::EL, Logic::ELI] {
            let e = example(logic);
            let d = decide_aq_fit(&e, &FitConfig::default()).unwrap();
            assert_eq!(d.verdict, Verdict::No);
            assert_eq!(
                d.certificate,
                Some(Certificate::Derived { negative: 0, assertion: Assertion::concept("A2", "n0:a") })
            );
            let c = d.completion.unwrap();
            assert!(c.has_label(c.individual("n0:a").unwrap(), "A2"));
            assert!(is_closed(&e, logic, &c).unwrap());
        }
    }

    #[test]
    fn no_negatives_gives_an_empty_completion() {
        let pos = ABox::new([Assertion::concept("A", "a")]).unwrap();
        let e = ExampleCollection::new(
            vec![Example::with_query(pos, Ucq::aq("B", "a")).unwrap()],
            vec![],
            Logic::EL,
            QueryLang::Aq,
        )
        .unwrap()
        .normalized();
        let cfg = FitConfig::default();
        let d = decide_aq_fit(&e, &cfg).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert!(d.completion.as_ref().unwrap().is_empty());
        assert_eq!(verify_fit(d.ontology.as_ref().unwrap(), &e, &cfg).unwrap().overall, Tri::True);
    }

    #[test]
    fn closure_propagates_through_chains() {
        // p0: {A(a)} ⊢ B(a), p1: {B(a)} ⊢ C(a); negative {A(x)} ⊢ C(x).
        let mk = |c: &str, q: &str| {
            Example::with_query(ABox::new([Assertion::concept(c, "a")]).unwrap(), Ucq::aq(q, "a")).unwrap()
        };
        let neg = Example::with_query(ABox::new([Assertion::concept("A", "x")]).unwrap(), Ucq::aq("C", "x")).unwrap();
        let e = ExampleCollection::new(vec![mk("A", "B"), mk("B", "C")], vec![neg], Logic::EL, QueryLang::Aq)
            .unwrap()
            .normalized();
        let d = decide_aq_fit(&e, &FitConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::No);
    }
}

//! Compact universal models for EL⊥ ontologies whose left-hand sides may
//! also be simulation quantifiers.
//!
//! Existential restrictions on the right are satisfied by one shared
//! representative element per filler concept, so the model has at most
//! `|ind(A)|` plus the number of distinct fillers elements. Left-hand sides
//! are preserved under simulations, which is what lets the representatives
//! be shared.

use std::collections::BTreeMap;

use crate::entail::variation::{enum_forest_variations, reduction_queries, Variation};
use crate::error::{Error, Result};
use crate::eval::{satisfies_el_query, Evaluator};
use crate::interp::{Elem, Interpretation};
use crate::query::{ABox, ElQuery, Ucq};
use crate::syntax::{Base, Concept, ConceptKind, Logic, Ontology};

#[derive(Clone, Debug)]
pub struct UniversalModel {
    pub interp: Interpretation,
    pub inconsistent: bool,
    /// Filler concept and its representative element, in creation order.
    pub fillers: Vec<(Concept, Elem)>,
}

/// Rejects ontologies the chase does not handle: inverse roles anywhere,
/// simulation quantifiers on the right or with an ELI tag on the left.
pub fn check_chase_input(o: &Ontology) -> Result<()> {
    for ci in o.cis() {
        if ci.rhs.has_sim() {
            return Err(Error::Logic(format!("simulation quantifier on the right of {ci}")));
        }
        let mut bad = None;
        ci.lhs.for_each_subconcept(&mut |c| {
            if let ConceptKind::Sim(s) = c.kind() {
                if s.base == Base::Eli {
                    bad = Some("ELI simulation quantifier");
                }
            }
            if let ConceptKind::Exists(r, _) = c.kind() {
                if r.inverted {
                    bad = Some("inverse role");
                }
            }
        });
        if ci.rhs.has_inverse() {
            bad = Some("inverse role");
        }
        if let Some(what) = bad {
            return Err(Error::Logic(format!("{what} not supported by the EL chase in {ci}")));
        }
    }
    Ok(())
}

struct Chase {
    u: Interpretation,
    reps: BTreeMap<Concept, Elem>,
    fillers: Vec<(Concept, Elem)>,
    inconsistent: bool,
}

impl Chase {
    fn apply(&mut self, c: &Concept, d: Elem) -> bool {
        if self.inconsistent {
            return false;
        }
        match c.kind() {
            ConceptKind::Top => false,
            ConceptKind::Bot => {
                self.inconsistent = true;
                true
            }
            ConceptKind::Atom(a) => self.u.add_label(d, a),
            ConceptKind::And(cs) => {
                let mut changed = false;
                for x in cs {
                    changed |= self.apply(x, d);
                }
                changed
            }
            ConceptKind::Exists(r, f) => {
                if Evaluator::new(&self.u).holds(c, d) {
                    return false;
                }
                let x = self.representative(f);
                self.u.add_edge(&r.name, d, x);
                true
            }
            ConceptKind::Sim(_) => unreachable!("rejected by check_chase_input"),
        }
    }

    fn representative(&mut self, f: &Concept) -> Elem {
        if let Some(&x) = self.reps.get(f) {
            return x;
        }
        let x = self.u.add_element(format!("_x{}", self.fillers.len()));
        self.reps.insert(f.clone(), x);
        self.fillers.push((f.clone(), x));
        self.apply(f, x);
        x
    }
}

/// Saturates the ABox under the ontology, CIs in order and elements in
/// ascending order (individuals first), until nothing changes.
pub fn chase_universal_model(abox: &ABox, o: &Ontology) -> Result<UniversalModel> {
    check_chase_input(o)?;
    let mut ch = Chase { u: abox.to_interpretation(), reps: BTreeMap::new(), fillers: Vec::new(), inconsistent: false };
    loop {
        let mut changed = false;
        for ci in o.cis() {
            let targets: Vec<Elem> = {
                let mut ev = Evaluator::new(&ch.u);
                let l = ev.eval(&ci.lhs);
                let r = ev.eval(&ci.rhs);
                ch.u.elements().filter(|&e| l[e] && !r[e]).collect()
            };
            for d in targets {
                changed |= ch.apply(&ci.rhs, d);
                if ch.inconsistent {
                    return Ok(UniversalModel { interp: ch.u, inconsistent: true, fillers: ch.fillers });
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(UniversalModel { interp: ch.u, inconsistent: false, fillers: ch.fillers })
}

impl UniversalModel {
    /// Unravels the anonymous part below each individual into trees of the
    /// given depth. The individual part (and its edges) stays as it is.
    /// Since EL-queries are preserved both ways between the compact model
    /// and its unraveling, this is the forest model used to certify CQ
    /// non-entailment.
    pub fn forest_unraveling(&self, depth: usize) -> Interpretation {
        let u = &self.interp;
        let is_ind = |e: Elem| u.individual_of(e).is_some();
        let mut out = Interpretation::new();
        let mut map: BTreeMap<Elem, Elem> = BTreeMap::new();
        for e in u.elements().filter(|&e| is_ind(e)) {
            let x = out.add_individual(u.individual_of(e).expect("named"));
            for a in u.labels(e) {
                out.add_label(x, a);
            }
            map.insert(e, x);
        }
        for (d, r, e) in u.edges() {
            if is_ind(d) && is_ind(e) {
                out.add_edge(r, map[&d], map[&e]);
            }
        }
        // (copy in `out`, element in `u`, remaining depth)
        let mut stack: Vec<(Elem, Elem, usize)> = map.iter().map(|(&e, &x)| (x, e, depth)).collect();
        stack.sort();
        stack.reverse();
        while let Some((x, e, left)) = stack.pop() {
            if left == 0 {
                continue;
            }
            for (r, f) in u.out_edges(e) {
                if is_ind(*f) {
                    continue;
                }
                let y = out.add_element(format!("{}.{}.{}", out.element_name(x), r, u.element_name(*f)));
                for a in u.labels(*f) {
                    out.add_label(y, a);
                }
                out.add_edge(r, x, y);
                stack.push((y, *f, left - 1));
            }
        }
        out
    }
}

/// `A ∪ O ⊨ q` for a concept query, by evaluation on the chase model.
pub fn entails_el_query(abox: &ABox, o: &Ontology, q: &ElQuery) -> Result<bool> {
    let m = chase_universal_model(abox, o)?;
    if m.inconsistent {
        return Ok(true);
    }
    satisfies_el_query(&m.interp, q)
}

/// The L-forest variations of every CQ of `q` over `abox`.
pub fn ucq_variations(abox: &ABox, q: &Ucq, logic: Logic) -> Vec<Variation> {
    q.cqs().iter().flat_map(|p| enum_forest_variations(abox, p, logic)).collect()
}

/// A variation all of whose reduction queries hold in `interp` (a
/// consistent chase model, say), if any.
pub fn entailing_variation<'v>(interp: &Interpretation, abox: &ABox, variations: &'v [Variation]) -> Result<Option<&'v Variation>> {
    let mut ev = Evaluator::new(interp);
    for v in variations {
        let mut all = true;
        for rq in reduction_queries(v, abox) {
            let ok = match &rq {
                ElQuery::Rooted(c, a) => {
                    let e = interp.individual(a).ok_or_else(|| Error::UnknownIndividual(a.to_string()))?;
                    ev.holds(c, e)
                }
                ElQuery::Existential(c) => ev.eval(c).iter().any(|&b| b),
            };
            if !ok {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// `A ∪ O ⊨ q` for an EL or EL⊥ ontology and a UCQ.
pub fn ucq_entailed_by_universal(abox: &ABox, o: &Ontology, q: &Ucq, logic: Logic) -> Result<bool> {
    if logic.base != Base::El {
        return Err(Error::Logic(format!("UCQ entailment via the chase needs an EL logic, got {}", logic.tag())));
    }
    for a in q.individuals() {
        if !abox.individuals().contains(&a) {
            return Err(Error::UnknownIndividual(a.to_string()));
        }
    }
    let m = chase_universal_model(abox, o)?;
    if m.inconsistent {
        return Ok(true);
    }
    Ok(entailing_variation(&m.interp, abox, &ucq_variations(abox, q, logic))?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{is_model, satisfies_abox, satisfies_ucq};
    use crate::query::{Assertion, Cq, QAtom, Term};
    use crate::syntax::{Ci, Sym};

    fn abox(a: &[Assertion]) -> ABox {
        ABox::new(a.iter().cloned()).unwrap()
    }

    fn a_loop() -> (ABox, Ontology) {
        let o = Ontology::new([Ci::new(Concept::atom("A"), Concept::some("r", Concept::atom("A")))]);
        (abox(&[Assertion::concept("A", "a")]), o)
    }

    #[test]
    fn empty_ontology_keeps_the_abox() {
        let a = abox(&[Assertion::role("r", "a", "b")]);
        let m = chase_universal_model(&a, &Ontology::empty()).unwrap();
        assert!(!m.inconsistent);
        assert_eq!(m.interp, a.to_interpretation());
    }

    #[test]
    fn representative_is_shared() {
        let (a, o) = a_loop();
        let m = chase_universal_model(&a, &o).unwrap();
        assert_eq!(m.interp.len(), 2);
        let x = m.fillers[0].1;
        assert!(m.interp.has_edge("r", 0, x) && m.interp.has_edge("r", x, x));
        assert!(m.interp.has_label(x, "A"));
        assert!(is_model(&m.interp, &o) && satisfies_abox(&m.interp, &a));
        assert!(entails_el_query(&a, &o, &ElQuery::Existential(Concept::atom("A"))).unwrap());
        assert!(!entails_el_query(&a, &o, &ElQuery::Rooted(Concept::atom("B"), Sym::new("a"))).unwrap());
    }

    #[test]
    fn cyclic_query_is_not_entailed_though_the_compact_model_has_a_loop() {
        let (a, o) = a_loop();
        let q = Ucq::single(Cq::new([QAtom::role("r", Term::var("x"), Term::var("x"))]).unwrap());
        assert!(!ucq_entailed_by_universal(&a, &o, &q, Logic::EL).unwrap());
        let m = chase_universal_model(&a, &o).unwrap();
        assert!(satisfies_ucq(&m.interp, &q).unwrap());
        let f = m.forest_unraveling(m.interp.len() + 2);
        assert!(!satisfies_ucq(&f, &q).unwrap());
        assert!(satisfies_abox(&f, &a));
    }

    #[test]
    fn bottom_makes_everything_entailed() {
        let a = abox(&[Assertion::concept("A", "a")]);
        let o = Ontology::new([Ci::new(Concept::atom("A"), Concept::bot())]);
        assert!(chase_universal_model(&a, &o).unwrap().inconsistent);
        assert!(ucq_entailed_by_universal(&a, &o, &Ucq::aq("Z", "a"), Logic::EL_BOT).unwrap());
    }

    #[test]
    fn inverse_roles_are_rejected() {
        let a = abox(&[Assertion::concept("A", "a")]);
        let o = Ontology::new([Ci::new(Concept::exists(crate::syntax::Role::inv("r"), Concept::top()), Concept::atom("B"))]);
        assert!(chase_universal_model(&a, &o).is_err());
    }
}

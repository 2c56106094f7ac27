//! Alternative encodings of fitting ontologies.
//!
//! - [`encode_char_poly`]: each characteristic concept `C^k_{A,b}` becomes
//!   an auxiliary name `X^k_b` defined by one CI per reachable `(element,
//!   depth)` pair, which keeps the ontology polynomial.
//! - [`synth_from_interpretation`]: an ontology read off a witness
//!   interpretation through names `V̄_d`, one per witness element.
//! - [`encode_abox_as_ontology`]: replaces an ABox by CIs over simulation
//!   quantifiers and a fresh role.

use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};
use crate::eval::satisfies_ucq;
use crate::fit::ucq::{audit_negatives, ens, prepare_witness};
use crate::fit::{fresh_role, require_lang, CharCi, FitConfig};
use crate::interp::{Elem, Interpretation, PointedInterp, Signature};
use crate::query::{ABox, ExampleCollection, QueryLang};
use crate::syntax::{Base, Ci, Concept, Logic, Ontology, Role};

fn labels(i: &Interpretation, e: Elem) -> Vec<Concept> {
    i.labels(e).iter().map(|a| Concept::atom(a.clone())).collect()
}

fn steps(i: &Interpretation, e: Elem, base: Base) -> Vec<(Role, Elem)> {
    let mut out: Vec<(Role, Elem)> = i.out_edges(e).iter().map(|(r, x)| (Role::new(r.clone()), *x)).collect();
    if base == Base::Eli {
        out.extend(i.in_edges(e).iter().map(|(r, x)| (Role::inv(r.clone()), *x)));
    }
    out
}

pub fn encode_char_poly(char_cis: &[CharCi], plain: &[Ci]) -> Ontology {
    let mut cis: Vec<Ci> = plain.to_vec();
    for c in char_cis {
        let i = &*c.source;
        let x = |e: Elem, k: usize| Concept::atom(format!("_X{k}.{}", i.element_name(e)));
        let mut needed = BTreeSet::new();
        let mut stack = vec![(c.elem, c.depth)];
        while let Some((e, k)) = stack.pop() {
            if !needed.insert((e, k)) || k == 0 {
                continue;
            }
            for (_, f) in steps(i, e, c.base) {
                stack.push((f, k - 1));
            }
        }
        for &(e, k) in &needed {
            let mut parts = labels(i, e);
            if k > 0 {
                parts.extend(steps(i, e, c.base).into_iter().map(|(r, f)| Concept::exists(r, x(f, k - 1))));
            }
            cis.push(Ci::new(Concept::and(parts), x(e, k)));
        }
        cis.push(Ci::new(x(c.elem, c.depth), c.rhs.clone()));
    }
    Ontology::new(cis)
}

/// The ontology read off `j` (families (i) to (v)); `pos` is the signature
/// of the positive examples.
pub fn interpretation_ontology(logic: Logic, pos: &Signature, j: &Interpretation) -> Ontology {
    let v = |d: Elem| Concept::atom(format!("_V.{}", j.element_name(d)));
    let all = || Concept::and(j.elements().map(v));
    let l_roles = |names: &BTreeSet<crate::syntax::Sym>| -> Vec<Role> {
        let mut out = Vec::new();
        for r in names {
            out.push(Role::new(r.clone()));
            if logic.has_inverses() {
                out.push(Role::inv(r.clone()));
            }
        }
        out
    };
    let mut cis = Vec::new();
    // (i)
    if logic.bottom {
        cis.push(Ci::new(all(), Concept::bot()));
    }
    for d in j.elements() {
        // (ii)
        for a in &pos.concepts {
            if !j.labels(d).contains(a) {
                cis.push(Ci::new(Concept::atom(a.clone()), v(d)));
            }
        }
        // (iii)
        for r in l_roles(&pos.roles) {
            let filler = Concept::and(j.neighbors(d, &r).map(v));
            cis.push(Ci::new(Concept::exists(r, filler), v(d)));
        }
    }
    let sig_j = j.signature();
    // (iv)
    for a in sig_j.concepts.union(&pos.concepts) {
        let lhs = Concept::and(j.elements().filter(|&d| !j.labels(d).contains(a)).map(v));
        cis.push(Ci::new(lhs, Concept::atom(a.clone())));
    }
    // (v)
    let n = j.len();
    for r in l_roles(&sig_j.roles.union(&pos.roles).cloned().collect()) {
        for mask in 0u64..(1u64 << n) {
            let inside = |e: Elem| mask >> e & 1 == 1;
            let p = j.elements().filter(|&d| j.neighbors(d, &r).all(inside));
            let lhs = Concept::and(p.map(v));
            let rhs = Concept::exists(r.clone(), Concept::and(j.elements().filter(|&e| inside(e)).map(v)));
            cis.push(Ci::new(lhs, rhs));
        }
    }
    Ontology::new(cis)
}

/// `i` with only the symbols of `sig`; element names are kept.
pub fn restrict_signature(i: &Interpretation, sig: &Signature) -> Interpretation {
    let mut out = Interpretation::new();
    for e in i.elements() {
        out.add_element(i.element_name(e));
        for a in i.labels(e).intersection(&sig.concepts) {
            out.add_label(e, a);
        }
    }
    for (d, r, e) in i.edges() {
        if sig.roles.contains(r) {
            out.add_edge(r, d, e);
        }
    }
    out
}

/// Reads a fitting ontology off a witness. Besides the conditions checked
/// for [`crate::fit::synth_from_witness`], each negative's part must refute
/// its query outright (not only its forest variations); compact chase
/// models with loops can fail this.
pub fn synth_from_interpretation(e: &ExampleCollection, i: &Interpretation, cfg: &FitConfig) -> Result<Ontology> {
    require_lang(e, &[QueryLang::Cq, QueryLang::Ucq])?;
    e.require_disjoint()?;
    let (w, pieces) = prepare_witness(e, i)?;
    audit_negatives(e, &pieces)?;
    ens(e, &w, cfg)?;
    for (k, (n, sub)) in e.negatives.iter().zip(&pieces).enumerate() {
        let q = n.query.as_ref().expect("UCQ examples carry queries");
        if satisfies_ucq(sub, q)? {
            return invalid(format!("witness part of negative {k} satisfies its query"));
        }
    }
    let j = restrict_signature(&w, &e.signature());
    if j.len() > cfg.interp_cap {
        return Err(Error::TooLarge(format!(
            "witness has {} elements; the interpretation ontology enumerates all subsets and is capped at {}",
            j.len(),
            cfg.interp_cap
        )));
    }
    let _ = fresh_role();
    Ok(interpretation_ontology(e.logic, &e.positive_signature(), &j))
}

/// `⊤ ⊑ ∃u.S_a` and `S_a ⊑ ∃sim_L(A, a)` for each individual `a`, with a
/// fresh role `u` and fresh names `S_a`.
pub fn encode_abox_as_ontology(abox: &ABox, logic: Logic) -> Ontology {
    let i = abox.to_interpretation();
    let u = Role::new(fresh_role());
    let mut cis = Vec::new();
    for (a, &e) in i.named() {
        let s = Concept::atom(format!("_S.{a}"));
        cis.push(Ci::new(Concept::top(), Concept::exists(u.clone(), s.clone())));
        let target = PointedInterp::new(i.clone(), e).expect("individual of the ABox");
        cis.push(Ci::new(s, Concept::sim(logic.base, target)));
    }
    Ontology::new(cis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{decide, verify_fit, Tri, Verdict};
    use crate::query::Assertion;
    use crate::syntax::Sym;

    #[test]
    fn depth_zero_is_labels_then_rhs() {
        let a = ABox::new([Assertion::concept("A", "a")]).unwrap();
        let c = CharCi {
            source: std::sync::Arc::new(a.to_interpretation()),
            elem: 0,
            depth: 0,
            base: Base::El,
            rhs: Concept::atom("B"),
        };
        let o = encode_char_poly(&[c], &[]);
        let x = Concept::atom("_X0.a");
        assert_eq!(o, Ontology::new([Ci::new(Concept::atom("A"), x.clone()), Ci::new(x, Concept::atom("B"))]));
    }

    #[test]
    fn poly_encoding_of_a_cycle_is_linear_in_depth() {
        let a = ABox::new([Assertion::role("r", "a", "b"), Assertion::role("r", "b", "a")]).unwrap();
        let c = CharCi { source: std::sync::Arc::new(a.to_interpretation()), elem: 0, depth: 10, base: Base::Eli, rhs: Concept::bot() };
        // 11 depths, alternating between a and b, plus the final CI.
        assert_eq!(encode_char_poly(&[c], &[]).len(), 12);
    }

    #[test]
    fn one_element_witness_gives_two_subsets() {
        let mut j = Interpretation::new();
        j.add_element("d");
        j.add_edge(&Sym::new("r"), 0, 0);
        let pos = Signature::new(["A"], ["r"]);
        let o = interpretation_ontology(Logic::EL, &pos, &j);
        let family_v = o.cis().iter().filter(|c| matches!(c.rhs.kind(), crate::syntax::ConceptKind::Exists(..))).count();
        assert_eq!(family_v, 2);
        // (ii) A ⊑ V̄_d, (iii) ∃r.V̄_d ⊑ V̄_d, (iv) V̄_d ⊑ A, (v) two.
        assert_eq!(o.len(), 5);
    }

    #[test]
    fn abox_encoding_has_two_cis_per_individual() {
        let a = ABox::new([Assertion::concept("A", "a")]).unwrap();
        let o = encode_abox_as_ontology(&a, Logic::ELI);
        assert_eq!(o.len(), 2);
        assert!(o.cis().iter().any(|c| c.rhs.has_sim()));
    }

    #[test]
    fn loop_example_interpretation_ontology_fits() {
        let e = crate::fit::ucq::tests::elprepforeli(Logic::ELI);
        let cfg = FitConfig::default();
        let d = decide(&e, &cfg).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        let o = synth_from_interpretation(&e, d.witness.as_ref().unwrap(), &cfg).unwrap();
        assert_ne!(verify_fit(&o, &e, &cfg).unwrap().overall, Tri::False);
        let p = encode_char_poly(&d.char_cis, &d.plain);
        assert_ne!(verify_fit(&p, &e, &cfg).unwrap().overall, Tri::False);
    }
}

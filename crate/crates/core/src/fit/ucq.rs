//! Fitting for conjunctive queries and their unions.
//!
//! For each positive example there is a finite menu of ontologies with
//! simulation quantifiers on the left (the Γ sets), one of which any fitting
//! ontology must imply. A fit exists iff some choice from each menu leaves
//! every negative with a finite model that refutes all forest variations of
//! its query. For EL the chase decides this per choice. For ELI candidate
//! models are searched up to a size bound, so only YES and UNKNOWN come
//! out. A YES comes with a witness interpretation; its simulation images
//! pick the characteristic-concept CIs of the final ontology.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::construct::sim_image_satisfies;
use crate::entail::{
    chase_universal_model, entailing_variation, enum_forest_variations, find_countermodel, reduction_queries, ucq_variations,
    Goal, Variation,
};
use crate::error::{invalid, Error, Result};
use crate::eval::satisfies_abox;
use crate::fit::verify::{verify_fit, Tri};
use crate::fit::{fresh_role, require_lang, CharCi, Certificate, FitConfig, FitDecision};
use crate::interp::{Elem, Interpretation, PointedInterp};
use crate::query::{ElQuery, Example, ExampleCollection, QueryLang, Ucq};
use crate::sim::SimTable;
use crate::syntax::{Base, Ci, Concept, Logic, Ontology, Role, Sym};

/// One entry of a positive example's menu.
#[derive(Clone, Debug)]
pub struct GammaMember {
    pub ontology: Ontology,
    /// `(a, D)` for each CI `∃sim(A, a) ⊑ D`.
    pub checks: Vec<(Sym, Concept)>,
    /// The forest variation the entry comes from; `None` for the ⊥ entries.
    pub variation: Option<Variation>,
}

fn query_of(x: &Example) -> Result<&Ucq> {
    x.query.as_ref().ok_or_else(|| Error::Invalid("UCQ fitting needs a query on every example".into()))
}

/// The menu of a positive example `(A, q)`: for every L-forest variation of
/// every CQ of `q` and every choice of anchor individuals for its
/// existential reduction queries, the CIs `∃sim(A, a) ⊑ C` for rooted `C(a)`
/// and `∃sim(A, f) ⊑ ∃u.C` for existential `∃x.C(x)` anchored at `f`. With
/// ⊥, also `{∃sim(A, a) ⊑ ⊥}` per individual. Duplicates are dropped.
pub fn gamma_sets(e: &Example, logic: Logic, u: &Sym) -> Result<Vec<GammaMember>> {
    let q = query_of(e)?;
    let src = e.abox.to_interpretation();
    let inds: Vec<Sym> = e.abox.individuals().into_iter().collect();
    let mut sims: BTreeMap<Sym, Concept> = BTreeMap::new();
    for a in &inds {
        let p = PointedInterp::new(src.clone(), src.individual(a).expect("ABox individual"))?;
        sims.insert(a.clone(), Concept::sim(logic.base, p));
    }
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |checks: Vec<(Sym, Concept)>, variation: Option<Variation>, out: &mut Vec<GammaMember>| {
        let ontology = Ontology::new(checks.iter().map(|(a, d)| Ci::new(sims[a].clone(), d.clone())));
        if seen.insert(ontology.clone()) {
            out.push(GammaMember { ontology, checks, variation });
        }
    };
    for p in q.cqs() {
        for v in enum_forest_variations(&e.abox, p, logic) {
            let mut rooted = Vec::new();
            let mut existential = Vec::new();
            for rq in reduction_queries(&v, &e.abox) {
                match rq {
                    ElQuery::Rooted(c, a) => rooted.push((a, c)),
                    ElQuery::Existential(c) => existential.push(Concept::exists(Role::new(u.clone()), c)),
                }
            }
            let mut anchors = vec![0usize; existential.len()];
            loop {
                let mut checks = rooted.clone();
                checks.extend(anchors.iter().zip(&existential).map(|(&k, c)| (inds[k].clone(), c.clone())));
                push(checks, Some(v.clone()), &mut out);
                if !advance(&mut anchors, |_| inds.len()) {
                    break;
                }
            }
        }
    }
    if logic.bottom {
        for a in &inds {
            push(vec![(a.clone(), Concept::bot())], None, &mut out);
        }
    }
    Ok(out)
}

/// Odometer step, rightmost digit fastest; false after the last tuple.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radix(i) {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Per-choice models of the negatives, or `None` if the choice fails.
type NegativeCheck<'a> = dyn FnMut(&Ontology) -> Result<Option<Vec<Interpretation>>> + 'a;

/// Tries the choices in order; the first one whose negatives all get a
/// model is turned into a YES.
fn search_choices(e: &ExampleCollection, cfg: &FitConfig, check: &mut NegativeCheck<'_>) -> Result<std::result::Result<FitDecision, usize>> {
    let u = fresh_role();
    let gammas: Vec<Vec<GammaMember>> = e.positives.iter().map(|p| gamma_sets(p, e.logic, &u)).collect::<Result<_>>()?;
    if gammas.iter().any(Vec::is_empty) {
        return Ok(Err(0));
    }
    let mut choice = vec![0usize; gammas.len()];
    let mut tried = 0;
    loop {
        tried += 1;
        if tried > cfg.choice_cap {
            return Err(Error::TooLarge(format!("more than {} choices of positive menus", cfg.choice_cap)));
        }
        let omega = Ontology::union(choice.iter().enumerate().map(|(i, &k)| &gammas[i][k].ontology));
        if let Some(models) = check(&omega)? {
            let witness = assemble_witness(&models)?;
            return synth_from_witness(e, &witness, cfg).map(Ok);
        }
        if !advance(&mut choice, |i| gammas[i].len()) {
            return Ok(Err(tried));
        }
    }
}

/// EL and EL⊥: exact, one chase per negative and choice.
pub fn decide_ucq_fit_el(e: &ExampleCollection, cfg: &FitConfig) -> Result<FitDecision> {
    require_lang(e, &[QueryLang::Cq, QueryLang::Ucq])?;
    e.require_disjoint()?;
    if e.logic.base != Base::El {
        return Err(Error::Logic(format!("the exact UCQ decider handles EL and EL⊥, not {}", e.logic.tag())));
    }
    if e.negatives.is_empty() {
        return fit_no_negatives(e, cfg);
    }
    let neg_vars: Vec<Vec<Variation>> =
        e.negatives.iter().map(|n| query_of(n).map(|q| ucq_variations(&n.abox, q, e.logic))).collect::<Result<_>>()?;
    let mut check = |omega: &Ontology| -> Result<Option<Vec<Interpretation>>> {
        let mut models = Vec::new();
        for (n, vars) in e.negatives.iter().zip(&neg_vars) {
            let m = chase_universal_model(&n.abox, omega)?;
            if m.inconsistent || entailing_variation(&m.interp, &n.abox, vars)?.is_some() {
                return Ok(None);
            }
            models.push(m.interp);
        }
        Ok(Some(models))
    };
    Ok(match search_choices(e, cfg, &mut check)? {
        Ok(d) => d,
        Err(choices) => FitDecision::no(Certificate::Exhausted { choices }),
    })
}

/// ELI and ELI⊥: for each choice, searches a model of each negative with at
/// most `max_size` elements (no fresh ones once the ABox alone is larger)
/// that refutes every ELI-forest variation of its query. Never says NO.
pub fn decide_ucq_fit_eli_bounded(e: &ExampleCollection, max_size: usize, cfg: &FitConfig) -> Result<FitDecision> {
    require_lang(e, &[QueryLang::Cq, QueryLang::Ucq])?;
    e.require_disjoint()?;
    if e.negatives.is_empty() {
        return fit_no_negatives(e, cfg);
    }
    let goals: Vec<Option<Ucq>> = e
        .negatives
        .iter()
        .map(|n| {
            let q = query_of(n)?;
            let cqs: Vec<_> = ucq_variations(&n.abox, q, e.logic).into_iter().map(|v| v.cq).collect();
            Ok(if cqs.is_empty() { None } else { Some(Ucq::new(cqs)?) })
        })
        .collect::<Result<_>>()?;
    let mut check = |omega: &Ontology| -> Result<Option<Vec<Interpretation>>> {
        let mut models = Vec::new();
        for (n, goal) in e.negatives.iter().zip(&goals) {
            let goal = goal.as_ref().map_or(Goal::Inconsistency, Goal::Ucq);
            match find_countermodel(n.abox.to_interpretation(), omega, goal, max_size)? {
                Some(m) => models.push(m),
                None => return Ok(None),
            }
        }
        Ok(Some(models))
    };
    Ok(match search_choices(e, cfg, &mut check)? {
        Ok(d) => d,
        Err(_) => FitDecision::unknown(max_size),
    })
}

/// Dispatches on the logic.
pub(crate) fn decide_ucq_fit(e: &ExampleCollection, cfg: &FitConfig) -> Result<FitDecision> {
    match e.logic.base {
        Base::El => decide_ucq_fit_el(e, cfg),
        Base::Eli => decide_ucq_fit_eli_bounded(e, cfg.max_witness_size, cfg),
    }
}

/// Without negatives: `{⊤ ⊑ ⊥}` with ⊥, otherwise the strongest ontology
/// over the signature, which fits iff anything does.
pub fn fit_no_negatives(e: &ExampleCollection, cfg: &FitConfig) -> Result<FitDecision> {
    if !e.negatives.is_empty() {
        return invalid("fit_no_negatives called with negative examples");
    }
    if e.logic.bottom {
        return Ok(FitDecision::yes(Vec::new(), vec![Ci::new(Concept::top(), Concept::bot())]));
    }
    let sig = e.signature();
    let mut plain: Vec<Ci> = sig.concepts.iter().map(|a| Ci::new(Concept::top(), Concept::atom(a.clone()))).collect();
    for r in &sig.roles {
        plain.push(Ci::new(Concept::top(), Concept::exists(Role::new(r.clone()), Concept::top())));
        if e.logic.has_inverses() {
            plain.push(Ci::new(Concept::top(), Concept::exists(Role::inv(r.clone()), Concept::top())));
        }
    }
    let report = verify_fit(&Ontology::new(plain.iter().cloned()), e, cfg)?;
    Ok(match report.overall {
        Tri::True => FitDecision::yes(Vec::new(), plain),
        Tri::False => {
            let positive = report.positives.iter().position(|&t| t == Tri::False).unwrap_or(0);
            FitDecision::no(Certificate::FullOntologyFails { positive })
        }
        Tri::Unknown => FitDecision::unknown(cfg.chase_depth),
    })
}

/// Disjoint union of per-negative models; anonymous elements get the
/// negative's index appended so names stay unique.
fn assemble_witness(models: &[Interpretation]) -> Result<Interpretation> {
    let renamed: Vec<Interpretation> = models
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let mut m = m.clone();
            for x in m.elements() {
                if m.individual_of(x).is_none() {
                    let name = format!("{}@n{j}", m.element_name(x));
                    m.rename_element(x, name);
                }
            }
            m
        })
        .collect();
    Ok(Interpretation::disjoint_union(&renamed)?.0)
}

/// Splits `i` into the parts belonging to each negative: the weakly
/// connected components holding its individuals. Components without
/// individuals belong to no part.
pub(crate) fn negative_parts(e: &ExampleCollection, i: &Interpretation) -> Result<Vec<BTreeSet<Elem>>> {
    let mut comp: Vec<usize> = (0..i.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (d, _, x) in i.edges() {
        let (a, b) = (find(&mut comp, d), find(&mut comp, x));
        comp[a] = b;
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, n) in e.negatives.iter().enumerate() {
        for a in n.abox.individuals() {
            let d = i.individual(&a).ok_or_else(|| Error::UnknownIndividual(a.to_string()))?;
            let c = find(&mut comp, d);
            if *owner.entry(c).or_insert(j) != j {
                return invalid(format!("witness connects the ABoxes of two negatives (at {a})"));
            }
        }
    }
    let mut parts = vec![BTreeSet::new(); e.negatives.len()];
    for x in i.elements() {
        let c = find(&mut comp, x);
        if let Some(&j) = owner.get(&c) {
            parts[j].insert(x);
        }
    }
    Ok(parts)
}

/// The part of `i` belonging to each negative, u-saturated, together with
/// their union (parts in order, element names kept).
pub(crate) fn prepare_witness(e: &ExampleCollection, i: &Interpretation) -> Result<(Interpretation, Vec<Interpretation>)> {
    let u = fresh_role();
    let parts = negative_parts(e, i)?;
    let mut pieces = Vec::new();
    for part in &parts {
        let (mut sub, _) = i.restrict(|x| part.contains(&x));
        for x in sub.elements() {
            for y in sub.elements() {
                sub.add_edge(&u, x, y);
            }
        }
        pieces.push(sub);
    }
    let (all, _) = Interpretation::disjoint_union(&pieces)?;
    Ok((all, pieces))
}

/// Condition (a′): each negative's part contains its ABox and refutes
/// every forest variation of its query.
pub(crate) fn audit_negatives(e: &ExampleCollection, pieces: &[Interpretation]) -> Result<()> {
    for (j, (n, sub)) in e.negatives.iter().zip(pieces).enumerate() {
        if !satisfies_abox(sub, &n.abox) {
            return invalid(format!("witness part of negative {j} does not contain its ABox"));
        }
        let vars = ucq_variations(&n.abox, query_of(n)?, e.logic);
        if let Some(v) = entailing_variation(sub, &n.abox, &vars)? {
            return invalid(format!("witness part of negative {j} satisfies the variation {}", v.cq));
        }
    }
    Ok(())
}

/// The CIs chosen for each positive against the witness (condition (b′)).
/// With ⊥ and no total simulation into `w`, an unmatched individual is
/// made inconsistent. Otherwise the first menu entry whose checks all hold
/// on the simulation images is taken.
pub(crate) fn ens(e: &ExampleCollection, w: &Interpretation, cfg: &FitConfig) -> Result<Vec<CharCi>> {
    let u = fresh_role();
    let base = e.logic.base;
    let mut out = Vec::new();
    for (i, p) in e.positives.iter().enumerate() {
        let src = p.abox.to_interpretation();
        let table = SimTable::compute(base, &src, w);
        let push = |elem: Elem, rhs: Concept, out: &mut Vec<CharCi>| {
            let depth = cfg.depth_for(&table, elem, w.len(), src.len());
            out.push(CharCi { source: Arc::new(src.clone()), elem, depth, base, rhs });
        };
        if e.logic.bottom && !table.total_at(None) {
            push(table.unmatched()[0], Concept::bot(), &mut out);
            continue;
        }
        let sim = table.greatest();
        let mut chosen = None;
        for m in gamma_sets(p, e.logic, &u)?.into_iter().filter(|m| m.variation.is_some()) {
            let mut ok = true;
            for (a, d) in &m.checks {
                if !sim_image_satisfies(e.logic.without_bottom(), &p.abox, &sim, w, d, a)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                chosen = Some(m);
                break;
            }
        }
        let m = chosen.ok_or_else(|| Error::Invalid(format!("witness violates condition (b') for positive {i}")))?;
        for (a, d) in m.checks {
            push(src.individual(&a).expect("ABox individual"), d, &mut out);
        }
    }
    Ok(out)
}

/// Synthesizes the characteristic-concept ontology from a witness. The
/// witness is cut into per-negative parts, u-saturated within each part and
/// audited; the YES decision carries the prepared witness.
pub fn synth_from_witness(e: &ExampleCollection, i: &Interpretation, cfg: &FitConfig) -> Result<FitDecision> {
    e.require_disjoint()?;
    require_lang(e, &[QueryLang::Cq, QueryLang::Ucq])?;
    let (w, pieces) = prepare_witness(e, i)?;
    audit_negatives(e, &pieces)?;
    let cis = ens(e, &w, cfg)?;
    let mut d = FitDecision::yes(cis, Vec::new());
    d.witness = Some(w);
    Ok(d)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fit::{decide, Verdict};
    use crate::query::{ABox, Assertion, Cq, QAtom, Term};

    fn ex(abox: &[Assertion], q: Cq) -> Example {
        Example::with_query(ABox::new(abox.iter().cloned()).unwrap(), Ucq::single(q)).unwrap()
    }

    fn cq(atoms: &[QAtom]) -> Cq {
        Cq::new(atoms.iter().cloned()).unwrap()
    }

    fn mentor(who: &str, what: &str) -> Cq {
        cq(&[QAtom::role("mentor", Term::ind(who), Term::var("x")), QAtom::concept(what, Term::var("x"))])
    }

    pub(crate) fn firstone() -> ExampleCollection {
        let p1 = ex(&[Assertion::concept("NewHire", "jane")], mentor("jane", "Emp"));
        let p2 = ex(
            &[Assertion::concept("NewHire", "alex"), Assertion::concept("RemoteWorker", "alex")],
            mentor("alex", "SeniorEmp"),
        );
        let n = ex(&[Assertion::concept("NewHire", "bob")], mentor("bob", "SeniorEmp"));
        ExampleCollection::new(vec![p1, p2], vec![n], Logic::EL, QueryLang::Cq).unwrap()
    }

    pub(crate) fn elprepforeli(logic: Logic) -> ExampleCollection {
        let p1 = ex(
            &[Assertion::concept("A", "a")],
            cq(&[QAtom::role("r", Term::ind("a"), Term::var("x")), QAtom::concept("A", Term::var("x"))]),
        );
        let p2 = ex(&[Assertion::role("r", "a", "a")], cq(&[QAtom::concept("B", Term::ind("a"))]));
        let n = ex(&[Assertion::concept("A", "a")], cq(&[QAtom::concept("B", Term::ind("a"))]));
        ExampleCollection::new(vec![p1, p2], vec![n], logic, QueryLang::Cq).unwrap().normalized()
    }

    #[test]
    fn menu_of_an_atomic_example() {
        let e = ex(&[Assertion::concept("A", "a")], cq(&[QAtom::concept("B", Term::ind("a"))]));
        let g = gamma_sets(&e, Logic::EL, &fresh_role()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].checks, vec![(Sym::new("a"), Concept::atom("B"))]);
        assert_eq!(gamma_sets(&e, Logic::EL_BOT, &fresh_role()).unwrap().len(), 2);
    }

    #[test]
    fn menu_of_the_first_mentor_example() {
        let e = firstone();
        let g = gamma_sets(&e.positives[0], Logic::EL, &fresh_role()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].checks, vec![(Sym::new("jane"), Concept::some("mentor", Concept::atom("Emp")))]);
    }

    #[test]
    fn existential_disjunct_is_anchored_with_the_fresh_role() {
        let e = Example::with_query(
            ABox::new([Assertion::concept("A", "a")]).unwrap(),
            Ucq::new([cq(&[QAtom::concept("B", Term::ind("a"))]), cq(&[QAtom::concept("B", Term::var("x"))])]).unwrap(),
        )
        .unwrap();
        let g = gamma_sets(&e, Logic::EL, &fresh_role()).unwrap();
        let u_b = Concept::exists(Role::new(fresh_role()), Concept::atom("B"));
        assert!(g.iter().any(|m| m.checks == vec![(Sym::new("a"), u_b.clone())]));
    }

    #[test]
    fn mentor_example_fits() {
        let e = firstone().normalized();
        let cfg = FitConfig::default();
        let d = decide(&e, &cfg).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        assert_eq!(verify_fit(d.ontology.as_ref().unwrap(), &e, &cfg).unwrap().overall, Tri::True);
        // NewHire ⊑ ∃mentor.Emp and NewHire ⊓ RemoteWorker ⊑ ∃mentor.SeniorEmp
        let cis: Vec<Ci> = d.char_cis.iter().map(CharCi::to_ci).collect();
        assert!(cis.contains(&Ci::new(Concept::atom("NewHire"), Concept::some("mentor", Concept::atom("Emp")))));
        assert!(cis.contains(&Ci::new(
            Concept::and([Concept::atom("NewHire"), Concept::atom("RemoteWorker")]),
            Concept::some("mentor", Concept::atom("SeniorEmp"))
        )));
    }

    #[test]
    fn loop_example_has_no_el_fit() {
        let d = decide(&elprepforeli(Logic::EL), &FitConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::No);
    }

    #[test]
    fn loop_example_has_an_eli_fit_of_size_two() {
        let e = elprepforeli(Logic::ELI);
        let cfg = FitConfig::default();
        assert_eq!(decide_ucq_fit_eli_bounded(&e, 1, &cfg).unwrap().verdict, Verdict::Unknown);
        let d = decide_ucq_fit_eli_bounded(&e, 2, &cfg).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        let w = d.witness.as_ref().unwrap();
        assert_eq!(w.len(), 2);
        let a = w.individual("n0:a").unwrap();
        let c = 1 - a;
        assert!(w.has_edge("r", a, c) && w.has_edge("r", c, c));
        assert!(w.has_label(c, "A") && w.has_label(c, "B") && !w.has_label(a, "B"));
        assert_ne!(verify_fit(d.ontology.as_ref().unwrap(), &e, &cfg).unwrap().overall, Tri::False);
    }

    #[test]
    fn backward_propagation_defeats_the_bounded_search() {
        let mut e = elprepforeli(Logic::ELI);
        let extra = ex(&[Assertion::concept("B", "p2:c"), Assertion::role("r", "p2:b", "p2:c")], cq(&[QAtom::concept("B", Term::ind("p2:b"))]));
        e.positives.push(extra);
        for bound in 1..=4 {
            assert_eq!(decide_ucq_fit_eli_bounded(&e, bound, &FitConfig::default()).unwrap().verdict, Verdict::Unknown);
        }
        e.logic = Logic::EL;
        assert_eq!(decide(&e, &FitConfig::default()).unwrap().verdict, Verdict::No);
    }

    #[test]
    fn no_negatives() {
        let p = ex(&[Assertion::concept("A", "a")], cq(&[QAtom::concept("B", Term::ind("a"))]));
        let e = ExampleCollection::new(vec![p], vec![], Logic::EL, QueryLang::Cq).unwrap();
        let d = fit_no_negatives(&e, &FitConfig::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Yes);
        let mut b = e.clone();
        b.logic = Logic::EL_BOT;
        assert_eq!(
            fit_no_negatives(&b, &FitConfig::default()).unwrap().ontology.unwrap(),
            Ontology::new([Ci::new(Concept::top(), Concept::bot())])
        );
        let p = ex(
            &[Assertion::concept("A", "a"), Assertion::concept("A", "b")],
            cq(&[QAtom::role("r", Term::ind("a"), Term::ind("b"))]),
        );
        let e = ExampleCollection::new(vec![p], vec![], Logic::EL, QueryLang::Cq).unwrap();
        assert_eq!(fit_no_negatives(&e, &FitConfig::default()).unwrap().verdict, Verdict::No);
    }

    #[test]
    fn witness_audit_rejects_a_model_of_the_negative_query() {
        let e = firstone().normalized();
        let mut i = e.negatives[0].abox.to_interpretation();
        let x = i.add_element("x");
        i.add_edge(&Sym::new("mentor"), 0, x);
        i.add_label(x, &Sym::new("SeniorEmp"));
        assert!(synth_from_witness(&e, &i, &FitConfig::default()).is_err());
    }

    #[test]
    fn eli_search_gives_up_when_the_negative_query_is_in_its_abox() {
        let p = ex(&[Assertion::concept("A", "a")], cq(&[QAtom::concept("A", Term::ind("a"))]));
        let n = ex(&[Assertion::concept("B", "b")], cq(&[QAtom::concept("B", Term::ind("b"))]));
        let e = ExampleCollection::new(vec![p], vec![n], Logic::ELI, QueryLang::Cq).unwrap();
        for bound in 1..=3 {
            assert_eq!(decide_ucq_fit_eli_bounded(&e, bound, &FitConfig::default()).unwrap().verdict, Verdict::Unknown);
        }
    }
}

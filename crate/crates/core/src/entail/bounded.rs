//! Sound but incomplete entailment for ELI⊥ ontologies with simulation
//! quantifiers.
//!
//! Entailment is confirmed on a depth-bounded tree chase, in which every
//! fact is forced. Non-entailment is confirmed by a finite countermodel
//! found by exhaustive search up to a domain-size bound. Anything else is
//! reported as unknown.
//!
//! A simulation quantifier `∃sim(J, e)` on the right is satisfied at `d` by
//! gluing a copy of `J` onto `d` (chase) or by mapping `J` homomorphically
//! into the current state (search). The glued copy only maps into other
//! models by a simulation, so the chase then confirms concept queries and
//! inconsistency but not CQs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::eval::{first_violation, satisfies_el_query, satisfies_ucq, Evaluator};
use crate::interp::{Elem, Interpretation, PointedInterp};
use crate::query::{ABox, ElQuery, Ucq};
use crate::syntax::{Base, Concept, ConceptKind, Ontology};

/// What the countermodel must avoid.
#[derive(Clone, Copy, Debug)]
pub enum Goal<'a> {
    Ucq(&'a Ucq),
    El(&'a ElQuery),
    /// Only inconsistency counts as entailment.
    Inconsistency,
}

impl Goal<'_> {
    pub fn holds(&self, i: &Interpretation) -> Result<bool> {
        match self {
            Goal::Ucq(q) => satisfies_ucq(i, q),
            Goal::El(q) => satisfies_el_query(i, q),
            Goal::Inconsistency => Ok(false),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Entailment {
    Entailed,
    /// A finite model of the ABox and ontology that refutes the goal.
    NotEntailed(Interpretation),
    Unknown,
}

fn rhs_sims(o: &Ontology) -> Vec<Base> {
    let mut out = Vec::new();
    for ci in o.cis() {
        ci.rhs.for_each_subconcept(&mut |c| {
            if let ConceptKind::Sim(s) = c.kind() {
                out.push(s.base);
            }
        });
    }
    out
}

/// An EL-tagged quantifier on the right is glued in by an EL simulation,
/// which preserves nothing with inverses; such ontologies must be free of
/// them.
fn check_input(o: &Ontology) -> Result<()> {
    let tags = rhs_sims(o);
    if tags.contains(&Base::El) {
        let eli_sim_left = o.cis().iter().any(|ci| {
            let mut found = false;
            ci.lhs.for_each_subconcept(&mut |c| {
                if let ConceptKind::Sim(s) = c.kind() {
                    found |= s.base == Base::Eli;
                }
            });
            found
        });
        if o.needs_eli() || eli_sim_left || tags.contains(&Base::Eli) {
            return Err(Error::Logic("EL simulation quantifier on the right of an ontology using inverses".into()));
        }
    }
    Ok(())
}

/// Result of the depth-bounded tree chase.
#[derive(Clone, Debug)]
pub struct TreeChase {
    pub interp: Interpretation,
    pub inconsistent: bool,
    /// True if no rule application was cut off by the depth bound, in which
    /// case `interp` is a model.
    pub complete: bool,
}

struct Tree {
    u: Interpretation,
    depth: Vec<usize>,
    max_depth: usize,
    inconsistent: bool,
    cut: bool,
}

impl Tree {
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
                if self.depth[d] >= self.max_depth {
                    self.cut = true;
                    return false;
                }
                let x = self.u.add_element(format!("{}.{}", self.u.element_name(d), r));
                self.depth.push(self.depth[d] + 1);
                self.u.add_role_edge(r, d, x);
                self.apply(f, x);
                true
            }
            ConceptKind::Sim(sq) => {
                if Evaluator::new(&self.u).holds(c, d) {
                    return false;
                }
                if self.depth[d] >= self.max_depth {
                    self.cut = true;
                    return false;
                }
                self.glue(&sq.target, d);
                true
            }
        }
    }

    fn glue(&mut self, t: &PointedInterp, d: Elem) {
        let src = &t.interp;
        let mut map = vec![d; src.len()];
        for x in src.elements().filter(|&x| x != t.point) {
            map[x] = self.u.add_element(format!("{}.~{}", self.u.element_name(d), src.element_name(x)));
            self.depth.push(self.depth[d] + 1);
        }
        for x in src.elements() {
            for a in src.labels(x) {
                self.u.add_label(map[x], a);
            }
        }
        for (x, r, y) in src.edges() {
            self.u.add_edge(r, map[x], map[y]);
        }
    }
}

/// Saturation that creates a fresh successor for every existential it has
/// to satisfy, up to `max_depth` below the ABox. Everything derived holds
/// (up to homomorphism) in every model of the ABox and ontology.
pub fn tree_chase(abox: &ABox, o: &Ontology, max_depth: usize) -> Result<TreeChase> {
    check_input(o)?;
    let u = abox.to_interpretation();
    let depth = vec![0; u.len()];
    let mut t = Tree { u, depth, max_depth, inconsistent: false, cut: false };
    loop {
        let mut changed = false;
        t.cut = false;
        for ci in o.cis() {
            let targets: Vec<Elem> = {
                let mut ev = Evaluator::new(&t.u);
                let l = ev.eval(&ci.lhs);
                let r = ev.eval(&ci.rhs);
                t.u.elements().filter(|&e| l[e] && !r[e]).collect()
            };
            for d in targets {
                changed |= t.apply(&ci.rhs, d);
                if t.inconsistent {
                    return Ok(TreeChase { interp: t.u, inconsistent: true, complete: false });
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(TreeChase { interp: t.u, inconsistent: false, complete: !t.cut })
}

/// Every way of making `c` true at `d` by adding facts, choosing targets of
/// existentials among existing elements or one fresh element (while the
/// domain is below `bound`). `⊥` yields no alternatives.
fn expand(st: Interpretation, c: &Concept, d: Elem, bound: usize) -> Vec<Interpretation> {
    match c.kind() {
        ConceptKind::Top => vec![st],
        ConceptKind::Bot => vec![],
        ConceptKind::Atom(a) => {
            let mut st = st;
            st.add_label(d, a);
            vec![st]
        }
        ConceptKind::And(cs) => {
            let mut states = vec![st];
            for x in cs {
                states = states.into_iter().flat_map(|s| expand(s, x, d, bound)).collect();
            }
            states
        }
        ConceptKind::Exists(r, f) => {
            if Evaluator::new(&st).holds(c, d) {
                return vec![st];
            }
            let mut out = Vec::new();
            let n = st.len();
            for e in 0..n {
                let mut s = st.clone();
                s.add_role_edge(r, d, e);
                out.extend(expand(s, f, e, bound));
            }
            if n < bound {
                let mut s = st;
                let e = s.add_element(format!("_m{}", n));
                s.add_role_edge(r, d, e);
                out.extend(expand(s, f, e, bound));
            }
            out
        }
        ConceptKind::Sim(sq) => {
            if Evaluator::new(&st).holds(c, d) {
                return vec![st];
            }
            let t = &sq.target;
            let mut map = vec![None; t.interp.len()];
            map[t.point] = Some(d);
            let mut out = Vec::new();
            map_into(st, &t.interp, &mut map, 0, bound, &mut out);
            out
        }
    }
}

/// Every extension of `map` to a homomorphism from `src` into `st` plus
/// fresh elements, with the missing facts added.
fn map_into(st: Interpretation, src: &Interpretation, map: &mut [Option<Elem>], next: Elem, bound: usize, out: &mut Vec<Interpretation>) {
    if next == src.len() {
        let mut st = st;
        for x in src.elements() {
            for a in src.labels(x) {
                st.add_label(map[x].expect("mapped"), a);
            }
        }
        for (x, r, y) in src.edges() {
            st.add_edge(r, map[x].expect("mapped"), map[y].expect("mapped"));
        }
        out.push(st);
        return;
    }
    if map[next].is_some() {
        return map_into(st, src, map, next + 1, bound, out);
    }
    for e in 0..st.len() {
        map[next] = Some(e);
        map_into(st.clone(), src, map, next + 1, bound, out);
    }
    if st.len() < bound {
        let mut s = st;
        let n = s.len();
        let e = s.add_element(format!("_m{n}"));
        map[next] = Some(e);
        map_into(s, src, map, next + 1, bound, out);
    }
    map[next] = None;
}

/// Budget on explored search states, so a single call cannot run away.
pub const SEARCH_STATE_CAP: usize = 200_000;

/// Search for a model of `start` (already containing the ABox) and `o`
/// with at most `bound` elements on which `goal` fails. Depth-first with
/// iterative deepening on the domain size, so smaller models are found
/// first; all rounds share one state budget. Facts are only ever added and
/// goals are monotone, so states satisfying the goal are pruned. Returns
/// `Ok(None)` if the search space is exhausted or the budget runs out.
pub fn find_countermodel(start: Interpretation, o: &Ontology, goal: Goal<'_>, bound: usize) -> Result<Option<Interpretation>> {
    check_input(o)?;
    let mut budget = SEARCH_STATE_CAP;
    for size in start.len().max(1)..=bound.max(start.len()) {
        let (found, exhausted) = search(start.clone(), o, goal, size, &mut budget)?;
        if found.is_some() || exhausted {
            return Ok(found);
        }
    }
    Ok(None)
}

/// One round; the flag reports that the budget ran out.
fn search(start: Interpretation, o: &Ontology, goal: Goal<'_>, bound: usize, budget: &mut usize) -> Result<(Option<Interpretation>, bool)> {
    let mut stack = vec![start];
    let mut seen: HashSet<Interpretation> = HashSet::new();
    while let Some(st) = stack.pop() {
        if !seen.insert(st.clone()) {
            continue;
        }
        if *budget == 0 {
            return Ok((None, true));
        }
        *budget -= 1;
        if goal.holds(&st)? {
            continue;
        }
        match first_violation(&st, o) {
            None => return Ok((Some(st), false)),
            Some((k, d)) => {
                let mut next = expand(st, &o.cis()[k].rhs, d, bound);
                next.reverse();
                stack.extend(next);
            }
        }
    }
    Ok((None, false))
}

/// Three-valued entailment of a goal by `A ∪ O`. `model_bound` is the total
/// domain size of candidate countermodels.
pub fn eli_entailment_bounded(abox: &ABox, o: &Ontology, goal: Goal<'_>, chase_depth: usize, model_bound: usize) -> Result<Entailment> {
    let tc = tree_chase(abox, o, chase_depth)?;
    // Glued copies preserve concept queries only.
    let cq_safe = rhs_sims(o).is_empty() || !matches!(goal, Goal::Ucq(_));
    if tc.inconsistent || (cq_safe && goal.holds(&tc.interp)?) {
        return Ok(Entailment::Entailed);
    }
    if tc.complete {
        return Ok(Entailment::NotEntailed(tc.interp));
    }
    match find_countermodel(abox.to_interpretation(), o, goal, model_bound)? {
        Some(m) => Ok(Entailment::NotEntailed(m)),
        None => Ok(Entailment::Unknown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{is_model, satisfies_abox};
    use crate::query::Assertion;
    use crate::syntax::{Ci, Role, Sym};

    fn prep() -> (ABox, Ontology) {
        let o = Ontology::new([
            Ci::new(Concept::atom("A"), Concept::some("r", Concept::atom("A"))),
            Ci::new(Concept::exists(Role::inv("r"), Concept::top()), Concept::atom("B")),
        ]);
        (ABox::new([Assertion::concept("A", "a")]).unwrap(), o)
    }

    #[test]
    fn assertion_is_entailed_at_depth_zero() {
        let a = ABox::new([Assertion::concept("A", "a")]).unwrap();
        let q = Ucq::aq("A", "a");
        assert_eq!(eli_entailment_bounded(&a, &Ontology::empty(), Goal::Ucq(&q), 0, 1).unwrap(), Entailment::Entailed);
    }

    #[test]
    fn loop_ontology_refutes_b_at_the_root() {
        let (a, o) = prep();
        let q = Ucq::aq("B", "a");
        match eli_entailment_bounded(&a, &o, Goal::Ucq(&q), 3, 2).unwrap() {
            Entailment::NotEntailed(m) => {
                assert_eq!(m.len(), 2);
                assert!(is_model(&m, &o) && satisfies_abox(&m, &a));
                assert!(!satisfies_ucq(&m, &q).unwrap());
            }
            other => panic!("{other:?}"),
        }
        // With a single element, a must loop and thus get B.
        assert_eq!(eli_entailment_bounded(&a, &o, Goal::Ucq(&q), 3, 1).unwrap(), Entailment::Unknown);
    }

    #[test]
    fn existential_b_is_entailed_by_the_chase() {
        let (a, o) = prep();
        let q = ElQuery::Existential(Concept::atom("B"));
        assert_eq!(eli_entailment_bounded(&a, &o, Goal::El(&q), 1, 2).unwrap(), Entailment::Entailed);
        let q = ElQuery::Rooted(Concept::atom("B"), Sym::new("a"));
        assert!(matches!(eli_entailment_bounded(&a, &o, Goal::El(&q), 1, 2).unwrap(), Entailment::NotEntailed(_)));
    }

    #[test]
    fn inconsistency_goal() {
        let a = ABox::new([Assertion::concept("A", "a")]).unwrap();
        let o = Ontology::new([Ci::new(Concept::atom("A"), Concept::bot())]);
        assert_eq!(eli_entailment_bounded(&a, &o, Goal::Inconsistency, 0, 1).unwrap(), Entailment::Entailed);
        assert!(matches!(
            eli_entailment_bounded(&a, &Ontology::empty(), Goal::Inconsistency, 0, 1).unwrap(),
            Entailment::NotEntailed(_)
        ));
    }
}

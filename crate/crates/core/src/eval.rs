//! Concept extensions, models, and CQ homomorphisms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::interp::{Elem, Interpretation};
use crate::query::{ABox, Assertion, Cq, ElQuery, QAtom, Term, Ucq};
use crate::sim::SimTable;
use crate::syntax::{Concept, ConceptKind, Logic, Ontology};

/// Evaluates concepts over one interpretation, memoizing per subconcept.
pub struct Evaluator<'a> {
    interp: &'a Interpretation,
    memo: HashMap<u64, Rc<Vec<bool>>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(interp: &'a Interpretation) -> Evaluator<'a> {
        Evaluator { interp, memo: HashMap::new() }
    }

    /// Membership vector of `C^I`, indexed by element.
    pub fn eval(&mut self, c: &Concept) -> Rc<Vec<bool>> {
        if let Some(v) = self.memo.get(&c.id()) {
            return v.clone();
        }
        for sub in c.postorder() {
            if self.memo.contains_key(&sub.id()) {
                continue;
            }
            let v = self.eval_node(&sub);
            self.memo.insert(sub.id(), Rc::new(v));
        }
        self.memo[&c.id()].clone()
    }

    pub fn holds(&mut self, c: &Concept, e: Elem) -> bool {
        self.eval(c)[e]
    }

    pub fn extension(&mut self, c: &Concept) -> BTreeSet<Elem> {
        self.eval(c).iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e).collect()
    }

    // Children are already memoized when this runs.
    fn eval_node(&self, c: &Concept) -> Vec<bool> {
        let i = self.interp;
        let n = i.len();
        match c.kind() {
            ConceptKind::Top => vec![true; n],
            ConceptKind::Bot => vec![false; n],
            ConceptKind::Atom(a) => i.elements().map(|e| i.labels(e).contains(a)).collect(),
            ConceptKind::And(cs) => {
                let mut v = vec![true; n];
                for x in cs {
                    let xv = &self.memo[&x.id()];
                    for e in 0..n {
                        v[e] &= xv[e];
                    }
                }
                v
            }
            ConceptKind::Exists(r, x) => {
                let xv = &self.memo[&x.id()];
                i.elements().map(|e| i.neighbors(e, r).any(|f| xv[f])).collect()
            }
            ConceptKind::Sim(s) => {
                let t = SimTable::compute(s.base, &s.target.interp, i);
                i.elements().map(|e| t.in_greatest(s.target.point, e)).collect()
            }
        }
    }
}

/// `C^I`.
pub fn eval_concept(c: &Concept, i: &Interpretation) -> BTreeSet<Elem> {
    Evaluator::new(i).extension(c)
}

/// `C^I`, rejecting concepts outside `logic`.
pub fn eval_concept_in(logic: Logic, c: &Concept, i: &Interpretation) -> Result<BTreeSet<Elem>> {
    c.check_logic(logic)?;
    Ok(eval_concept(c, i))
}

/// Index of the first CI violated in `i`, with a witness element.
pub fn first_violation(i: &Interpretation, o: &Ontology) -> Option<(usize, Elem)> {
    let mut ev = Evaluator::new(i);
    for (k, ci) in o.cis().iter().enumerate() {
        let l = ev.eval(&ci.lhs);
        let r = ev.eval(&ci.rhs);
        if let Some(e) = i.elements().find(|&e| l[e] && !r[e]) {
            return Some((k, e));
        }
    }
    None
}

pub fn is_model(i: &Interpretation, o: &Ontology) -> bool {
    first_violation(i, o).is_none()
}

/// Every assertion of `a` holds under the individual names of `i`.
pub fn satisfies_abox(i: &Interpretation, a: &ABox) -> bool {
    a.assertions().iter().all(|x| match x {
        Assertion::Concept(c, ind) => i.individual(ind).is_some_and(|e| i.labels(e).contains(c)),
        Assertion::Role(r, x, y) => match (i.individual(x), i.individual(y)) {
            (Some(d), Some(e)) => i.has_edge(r.as_str(), d, e),
            _ => false,
        },
    })
}

fn atom_holds(i: &Interpretation, atom: &QAtom, h: &BTreeMap<Term, Elem>) -> Option<bool> {
    match atom {
        QAtom::Concept(c, t) => h.get(t).map(|&e| i.labels(e).contains(c)),
        QAtom::Role(r, s, t) => match (h.get(s), h.get(t)) {
            (Some(&d), Some(&e)) => Some(i.has_edge(r.as_str(), d, e)),
            _ => None,
        },
    }
}

/// A homomorphism from `q` to `i` that is the identity on individuals.
pub fn find_cq_hom(q: &Cq, i: &Interpretation) -> Result<Option<BTreeMap<Term, Elem>>> {
    let mut h: BTreeMap<Term, Elem> = BTreeMap::new();
    for a in q.individuals() {
        let e = i.individual(&a).ok_or_else(|| Error::UnknownIndividual(a.to_string()))?;
        h.insert(Term::Ind(a), e);
    }
    if q.atoms().iter().filter_map(|a| atom_holds(i, a, &h)).any(|b| !b) {
        return Ok(None);
    }
    // Order variables so that each one is, where possible, adjacent to an
    // earlier term; candidates then come from edges instead of the domain.
    let vars: Vec<Term> = q.vars().into_iter().map(Term::Var).collect();
    let mut order: Vec<Term> = Vec::new();
    let mut placed: BTreeSet<Term> = h.keys().cloned().collect();
    while order.len() < vars.len() {
        let next = vars
            .iter()
            .filter(|v| !placed.contains(*v))
            .max_by_key(|v| {
                q.atoms()
                    .iter()
                    .filter(|a| {
                        let ts = a.terms();
                        ts.contains(v) && ts.iter().any(|t| placed.contains(*t))
                    })
                    .count()
            })
            .expect("unplaced variable")
            .clone();
        placed.insert(next.clone());
        order.push(next);
    }
    if search(q, i, &order, &mut h) {
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

fn search(q: &Cq, i: &Interpretation, order: &[Term], h: &mut BTreeMap<Term, Elem>) -> bool {
    let Some((v, rest)) = order.split_first() else {
        return true;
    };
    let mut cands: Option<BTreeSet<Elem>> = None;
    for a in q.atoms() {
        if let QAtom::Role(r, s, t) = a {
            let restrict: Option<BTreeSet<Elem>> = if s == v && t != v {
                h.get(t).map(|&e| i.in_edges(e).iter().filter(|(x, _)| x == r).map(|(_, d)| *d).collect())
            } else if t == v && s != v {
                h.get(s).map(|&d| i.out_edges(d).iter().filter(|(x, _)| x == r).map(|(_, e)| *e).collect())
            } else {
                None
            };
            if let Some(set) = restrict {
                cands = Some(match cands {
                    None => set,
                    Some(c) => c.intersection(&set).copied().collect(),
                });
            }
        }
    }
    let cands: Vec<Elem> = match cands {
        Some(c) => c.into_iter().collect(),
        None => i.elements().collect(),
    };
    for e in cands {
        h.insert(v.clone(), e);
        let ok = q
            .atoms()
            .iter()
            .filter(|a| a.terms().contains(&v))
            .all(|a| atom_holds(i, a, h).unwrap_or(true));
        if ok && search(q, i, rest, h) {
            return true;
        }
        h.remove(v);
    }
    false
}

pub fn satisfies_ucq(i: &Interpretation, q: &Ucq) -> Result<bool> {
    for cq in q.cqs() {
        if find_cq_hom(cq, i)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn satisfies_el_query(i: &Interpretation, q: &ElQuery) -> Result<bool> {
    match q {
        ElQuery::Rooted(c, a) => {
            let e = i.individual(a).ok_or_else(|| Error::UnknownIndividual(a.to_string()))?;
            Ok(Evaluator::new(i).holds(c, e))
        }
        ElQuery::Existential(c) => Ok(Evaluator::new(i).eval(c).iter().any(|&b| b)),
    }
}

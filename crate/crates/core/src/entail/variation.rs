//! Forest variations of CQs and their reduction queries.
//!
//! A variation of a CQ `p` over an ABox substitutes individuals for some
//! variables and identifies others. It is an L-forest variation when every
//! role atom between individuals is asserted in the ABox and the rest of the
//! query splits into tree-shaped components, each holding at most one
//! individual, which is then its root. Directed trees (edges pointing away
//! from the root) are required for EL; ELI accepts any orientation. Each
//! component turns into a concept query through its tree concept.

use std::collections::{BTreeMap, BTreeSet};

use crate::construct::{tree_concept, TreeCq};
use crate::query::{ABox, Cq, ElQuery, QAtom, Term};
use crate::syntax::{Base, Logic, Sym};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variation {
    pub cq: Cq,
    pub origin: Cq,
    pub logic: Logic,
}

/// Rooted `C(a)` or existential `∃x.C(x)` query of one component.
pub type ReductionQuery = ElQuery;

/// Splits the atoms not asserted in `abox` into connected components (terms
/// shared between atoms connect them).
pub fn non_abox_components(cq: &Cq, abox: &ABox) -> Vec<Vec<QAtom>> {
    let atoms: Vec<&QAtom> =
        cq.atoms().iter().filter(|a| a.as_assertion().is_none_or(|x| !abox.contains(&x))).collect();
    let mut parent: Vec<usize> = (0..atoms.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut owner: BTreeMap<&Term, usize> = BTreeMap::new();
    for (k, a) in atoms.iter().enumerate() {
        for t in a.terms() {
            match owner.get(t) {
                Some(&j) => {
                    let (x, y) = (find(&mut parent, j), find(&mut parent, k));
                    parent[x] = y;
                }
                None => {
                    owner.insert(t, k);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<QAtom>> = BTreeMap::new();
    for (k, a) in atoms.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push((*a).clone());
    }
    let mut out: Vec<Vec<QAtom>> = groups.into_values().collect();
    out.sort();
    out
}

/// Root of a tree component: its individual if it has one; for EL the
/// term without incoming edges; for ELI the least term.
fn component_tree(atoms: &[QAtom], base: Base) -> Option<TreeCq> {
    let cq = Cq::new(atoms.iter().cloned()).ok()?;
    let terms = cq.terms();
    let inds: Vec<&Term> = terms.iter().filter(|t| !t.is_var()).collect();
    if inds.len() > 1 {
        return None;
    }
    let root = match (inds.first(), base) {
        (Some(t), _) => (*t).clone(),
        (None, Base::Eli) => terms.iter().next()?.clone(),
        (None, Base::El) => {
            let targets: BTreeSet<&Term> = cq
                .atoms()
                .iter()
                .filter_map(|a| match a {
                    QAtom::Role(_, _, t) => Some(t),
                    QAtom::Concept(..) => None,
                })
                .collect();
            terms.iter().find(|t| !targets.contains(t))?.clone()
        }
    };
    TreeCq::new(cq, root, base).ok()
}

/// Audit of the forest conditions for a (substituted) CQ.
pub fn is_forest_variation(abox: &ABox, cq: &Cq, base: Base) -> bool {
    let inds = abox.individuals();
    for a in cq.atoms() {
        for t in a.terms() {
            if let Term::Ind(x) = t {
                if !inds.contains(x) {
                    return false;
                }
            }
        }
        if let (QAtom::Role(..), Some(x)) = (a, a.as_assertion()) {
            if !abox.contains(&x) {
                return false;
            }
        }
    }
    non_abox_components(cq, abox).iter().all(|c| component_tree(c, base).is_some())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Canonical variable renaming: the lexicographically least sorted atom list
/// over all renamings to `v0, v1, ...` (exact up to six variables; beyond
/// that, variables are numbered by first occurrence).
pub fn canonical_form(cq: &Cq) -> Cq {
    let vars: Vec<Sym> = cq.vars().into_iter().collect();
    let rename = |perm: &[usize]| {
        let map: BTreeMap<&Sym, Sym> =
            vars.iter().zip(perm).map(|(v, &i)| (v, Sym::from(format!("v{i}")))).collect();
        cq.map_terms(|t| match t {
            Term::Var(x) => Term::Var(map[x].clone()),
            t => t.clone(),
        })
    };
    if vars.len() <= 6 {
        permutations(vars.len()).iter().map(|p| rename(p)).min().expect("at least the identity")
    } else {
        let mut order: Vec<&Sym> = Vec::new();
        for a in cq.atoms() {
            for t in a.terms() {
                if let Term::Var(x) = t {
                    if !order.contains(&x) {
                        order.push(x);
                    }
                }
            }
        }
        let perm: Vec<usize> = vars.iter().map(|v| order.iter().position(|o| *o == v).expect("occurs")).collect();
        rename(&perm)
    }
}

/// All L-forest variations of `p` over `abox`, deduplicated up to variable
/// renaming, in canonical order.
pub fn enum_forest_variations(abox: &ABox, p: &Cq, logic: Logic) -> Vec<Variation> {
    let vars: Vec<Sym> = p.vars().into_iter().collect();
    let inds: Vec<Sym> = abox.individuals().into_iter().collect();
    let mut found: BTreeSet<Cq> = BTreeSet::new();
    // choice[i]: Ok(individual index) or Err(block index).
    let mut choice: Vec<Result<usize, usize>> = Vec::new();
    enumerate(abox, p, &vars, &inds, logic.base, &mut choice, 0, &mut found);
    found.into_iter().map(|cq| Variation { cq, origin: p.clone(), logic }).collect()
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    abox: &ABox,
    p: &Cq,
    vars: &[Sym],
    inds: &[Sym],
    base: Base,
    choice: &mut Vec<Result<usize, usize>>,
    blocks: usize,
    found: &mut BTreeSet<Cq>,
) {
    let term_of = |choice: &[Result<usize, usize>], x: &Sym| -> Option<Term> {
        let i = vars.iter().position(|v| v == x)?;
        let c = choice.get(i)?;
        Some(match c {
            Ok(k) => Term::Ind(inds[*k].clone()),
            // A block is named after its first variable.
            Err(b) => {
                let first = choice.iter().position(|c| *c == Err(*b)).expect("block has a member");
                Term::Var(vars[first].clone())
            }
        })
    };
    // Prune: role atoms whose terms are all individuals must be asserted.
    for a in p.atoms() {
        if let QAtom::Role(r, s, t) = a {
            let resolve = |t: &Term| match t {
                Term::Ind(x) => Some(Term::Ind(x.clone())),
                Term::Var(x) => term_of(choice, x),
            };
            if let (Some(Term::Ind(x)), Some(Term::Ind(y))) = (resolve(s), resolve(t)) {
                if !abox.contains(&crate::query::Assertion::Role(r.clone(), x, y)) {
                    return;
                }
            }
        }
    }
    if choice.len() == vars.len() {
        let cq = p.map_terms(|t| match t {
            Term::Var(x) => term_of(choice, x).expect("all assigned"),
            t => t.clone(),
        });
        if is_forest_variation(abox, &cq, base) {
            found.insert(canonical_form(&cq));
        }
        return;
    }
    for k in 0..inds.len() {
        choice.push(Ok(k));
        enumerate(abox, p, vars, inds, base, choice, blocks, found);
        choice.pop();
    }
    for b in 0..=blocks {
        choice.push(Err(b));
        enumerate(abox, p, vars, inds, base, choice, blocks.max(b + 1), found);
        choice.pop();
    }
}

/// One reduction query per tree component of the variation minus the ABox.
pub fn reduction_queries(v: &Variation, abox: &ABox) -> Vec<ReductionQuery> {
    let mut out: Vec<ReductionQuery> = non_abox_components(&v.cq, abox)
        .iter()
        .map(|c| {
            let t = component_tree(c, v.logic.base).expect("variation components are trees");
            let concept = tree_concept(&t);
            match &t.root {
                Term::Ind(a) => ElQuery::Rooted(concept, a.clone()),
                Term::Var(_) => ElQuery::Existential(concept),
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

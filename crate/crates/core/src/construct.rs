//! Products, bounded unravelings, characteristic concepts, tree concepts,
//! and the satisfaction test for the interpretations built from an ABox, a
//! simulation and a target interpretation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::interp::{Elem, Interpretation, PointedInterp, Signature};
use crate::query::{ABox, Cq, QAtom, Term};
use crate::sim::{audit_simulation, Simulation};
use crate::syntax::{Base, Concept, Logic, Role, Sym};

/// Products with more elements than this are refused.
pub const PRODUCT_CAP: usize = 200_000;

/// Direct product of pointed interpretations. The empty product is the
/// one-element interpretation where every signature concept holds and every
/// signature role loops.
pub fn product(parts: &[PointedInterp], sig: &Signature) -> Result<PointedInterp> {
    if parts.is_empty() {
        let mut i = Interpretation::new();
        let e = i.add_element("()");
        for a in &sig.concepts {
            i.add_label(e, a);
        }
        for r in &sig.roles {
            i.add_edge(r, e, e);
        }
        return PointedInterp::new(i, e);
    }
    let sizes: Vec<usize> = parts.iter().map(|p| p.interp.len()).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n).filter(|&x| x <= PRODUCT_CAP));
    let total = total.ok_or_else(|| Error::TooLarge(format!("product of domains {sizes:?}")))?;
    let index = |tuple: &[Elem]| tuple.iter().zip(&sizes).fold(0usize, |acc, (&x, &n)| acc * n + x);
    let tuple_of = |mut k: usize| {
        let mut t = vec![0; sizes.len()];
        for (slot, &n) in t.iter_mut().zip(&sizes).rev() {
            *slot = k % n;
            k /= n;
        }
        t
    };
    let mut out = Interpretation::new();
    for k in 0..total {
        let t = tuple_of(k);
        let name = format!(
            "({})",
            t.iter().zip(parts).map(|(&x, p)| p.interp.element_name(x).to_string()).collect::<Vec<_>>().join(",")
        );
        let e = out.add_element(name);
        let mut labels = parts[0].interp.labels(t[0]).clone();
        for (x, p) in t.iter().zip(parts).skip(1) {
            labels = labels.intersection(p.interp.labels(*x)).cloned().collect();
        }
        for a in &labels {
            out.add_label(e, a);
        }
    }
    for k in 0..total {
        let t = tuple_of(k);
        let roles: BTreeSet<Sym> = parts[0].interp.out_edges(t[0]).iter().map(|(r, _)| r.clone()).collect();
        for r in roles {
            let role = Role::new(r.clone());
            let succs: Vec<Vec<Elem>> = t.iter().zip(parts).map(|(&x, p)| p.interp.neighbors(x, &role).collect()).collect();
            if succs.iter().any(|s| s.is_empty()) {
                continue;
            }
            let mut cur = vec![0usize; succs.len()];
            'tuples: loop {
                let target: Vec<Elem> = cur.iter().zip(&succs).map(|(&c, s)| s[c]).collect();
                out.add_edge(&r, k, index(&target));
                let mut pos = succs.len();
                loop {
                    if pos == 0 {
                        break 'tuples;
                    }
                    pos -= 1;
                    cur[pos] += 1;
                    if cur[pos] < succs[pos].len() {
                        continue 'tuples;
                    }
                    cur[pos] = 0;
                }
            }
        }
    }
    let point: Vec<Elem> = parts.iter().map(|p| p.point).collect();
    PointedInterp::new(out, index(&point))
}

/// A bounded unraveling together with the tail of every path element.
#[derive(Clone, Debug)]
pub struct Unraveling {
    pub pointed: PointedInterp,
    pub tail: Vec<Elem>,
    pub path_len: Vec<usize>,
}

/// Paths of length at most `depth` starting at `d`. EL paths follow edges
/// forward only; ELI paths may also step backwards along an edge.
pub fn unravel(base: Base, i: &Interpretation, d: Elem, depth: usize) -> Unraveling {
    let mut out = Interpretation::new();
    let root = out.add_element(i.element_name(d));
    for a in i.labels(d) {
        out.add_label(root, a);
    }
    let mut tail = vec![d];
    let mut path_len = vec![0];
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        if path_len[p] == depth {
            continue;
        }
        let t = tail[p];
        let mut steps: Vec<(Role, Elem)> = i.out_edges(t).iter().map(|(r, e)| (Role::new(r.clone()), *e)).collect();
        if base == Base::Eli {
            steps.extend(i.in_edges(t).iter().map(|(r, e)| (Role::inv(r.clone()), *e)));
        }
        for (r, e) in steps {
            let name = format!("{}.{}{}.{}", out.element_name(p), r.name, if r.inverted { "-" } else { "" }, i.element_name(e));
            let q = out.add_element(name);
            for a in i.labels(e) {
                out.add_label(q, a);
            }
            out.add_role_edge(&r, p, q);
            tail.push(e);
            path_len.push(path_len[p] + 1);
            queue.push_back(q);
        }
    }
    Unraveling { pointed: PointedInterp { interp: out, point: root }, tail, path_len }
}

/// Memoized characteristic concepts over one interpretation.
pub struct CharBuilder<'a> {
    base: Base,
    interp: &'a Interpretation,
    memo: HashMap<(Elem, usize), Concept>,
}

impl<'a> CharBuilder<'a> {
    pub fn new(base: Base, interp: &'a Interpretation) -> CharBuilder<'a> {
        CharBuilder { base, interp, memo: HashMap::new() }
    }

    fn labels(&self, e: Elem) -> Concept {
        Concept::and(self.interp.labels(e).iter().map(|a| Concept::atom(a.clone())))
    }

    /// `C^{L,k}_{I,d}`: `C⁰` is the conjunction of `d`'s labels and
    /// `C^{k+1} = C⁰ ⊓ ⊓ ∃r.C^k(e)` over the `r`-steps `(d, e)`.
    pub fn concept(&mut self, d: Elem, k: usize) -> Concept {
        if let Some(c) = self.memo.get(&(d, k)) {
            return c.clone();
        }
        // Elements within distance k of d, with their distances; element e
        // at distance j needs its concept of depth k - j.
        let i = self.interp;
        let mut dist: BTreeMap<Elem, usize> = BTreeMap::from([(d, 0)]);
        let mut queue = VecDeque::from([d]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[&x];
            if dx == k {
                continue;
            }
            let mut next: Vec<Elem> = i.out_edges(x).iter().map(|(_, e)| *e).collect();
            if self.base == Base::Eli {
                next.extend(i.in_edges(x).iter().map(|(_, e)| *e));
            }
            for y in next {
                if let std::collections::btree_map::Entry::Vacant(v) = dist.entry(y) {
                    v.insert(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        for level in 0..=k {
            for (&e, &de) in &dist {
                if de + level > k || self.memo.contains_key(&(e, level)) {
                    continue;
                }
                let c = if level == 0 {
                    self.labels(e)
                } else {
                    let mut parts = vec![self.labels(e)];
                    for (r, f) in i.out_edges(e) {
                        parts.push(Concept::exists(Role::new(r.clone()), self.memo[&(*f, level - 1)].clone()));
                    }
                    if self.base == Base::Eli {
                        for (r, f) in i.in_edges(e) {
                            parts.push(Concept::exists(Role::inv(r.clone()), self.memo[&(*f, level - 1)].clone()));
                        }
                    }
                    Concept::and(parts)
                };
                self.memo.insert((e, level), c);
            }
        }
        self.memo[&(d, k)].clone()
    }
}

pub fn char_concept(base: Base, i: &Interpretation, d: Elem, k: usize) -> Concept {
    CharBuilder::new(base, i).concept(d, k)
}

/// A tree-shaped CQ with a designated root.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TreeCq {
    pub atoms: Cq,
    pub root: Term,
    pub base: Base,
}

impl TreeCq {
    /// Validates tree shape: connected, acyclic as a multigraph over role
    /// atoms (so `r(x,y) ∧ s(x,y)` is a cycle), edges directed away from the
    /// root for EL, and at most one individual, which must be the root.
    pub fn new(atoms: Cq, root: Term, base: Base) -> Result<TreeCq> {
        let terms = atoms.terms();
        if !terms.contains(&root) {
            return Err(Error::NotATree(format!("root {root} does not occur")));
        }
        for t in &terms {
            if !t.is_var() && *t != root {
                return Err(Error::NotATree(format!("individual {t} is not the root")));
            }
        }
        let edges: Vec<(&Term, &Term)> = atoms
            .atoms()
            .iter()
            .filter_map(|a| match a {
                QAtom::Role(_, s, t) => Some((s, t)),
                QAtom::Concept(..) => None,
            })
            .collect();
        if edges.len() + 1 != terms.len() {
            return Err(Error::NotATree(format!("{} edges over {} terms", edges.len(), terms.len())));
        }
        // With |E| = |V| - 1, connectivity implies acyclicity.
        let mut seen: BTreeSet<&Term> = BTreeSet::from([&root]);
        let mut stack = vec![&root];
        while let Some(x) = stack.pop() {
            for &(s, t) in &edges {
                let other = if s == x {
                    t
                } else if t == x {
                    s
                } else {
                    continue;
                };
                if seen.insert(other) {
                    if base == Base::El && s != x {
                        return Err(Error::NotATree(format!("edge into {x} points toward the root")));
                    }
                    stack.push(other);
                }
            }
        }
        if seen.len() != terms.len() {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(TreeCq { atoms, root, base })
    }
}

/// The concept `C_p̂` of a tree CQ: labels of the root and one existential
/// restriction per child subtree.
pub fn tree_concept(t: &TreeCq) -> Concept {
    fn go(t: &TreeCq, node: &Term, parent: Option<&Term>) -> Concept {
        let mut parts = Vec::new();
        for a in t.atoms.atoms() {
            match a {
                QAtom::Concept(c, x) if x == node => parts.push(Concept::atom(c.clone())),
                QAtom::Role(r, s, x) if s == node && Some(x) != parent => {
                    parts.push(Concept::exists(Role::new(r.clone()), go(t, x, Some(node))))
                }
                QAtom::Role(r, x, s) if s == node && Some(x) != parent => {
                    parts.push(Concept::exists(Role::inv(r.clone()), go(t, x, Some(node))))
                }
                _ => {}
            }
        }
        Concept::and(parts)
    }
    go(t, &t.root, None)
}

/// Decides `I_{A,S,L} ⊨ C(a)` without building the (infinite) interpretation:
/// it holds iff every `S`-partner of `a` satisfies `C` in `I`.
pub fn sim_image_satisfies(
    logic: Logic,
    abox: &ABox,
    sim: &Simulation,
    interp: &Interpretation,
    c: &Concept,
    a: &Sym,
) -> Result<bool> {
    let ai = abox.to_interpretation();
    audit_simulation(logic, &ai, interp, &sim.pairs).map_err(|e| Error::Invalid(format!("not a simulation: {e}")))?;
    let d = ai.individual(a).ok_or_else(|| Error::UnknownIndividual(a.to_string()))?;
    let ext = Evaluator::new(interp).eval(c);
    Ok(sim.image(d).into_iter().all(|e| ext[e]))
}

/// The prefix of `I_{A,S,L}` up to path length `depth`. Test aid only.
///
/// Individuals carry the labels shared by all their partners (all signature
/// labels if they have none) and exactly the ABox's role edges; below each
/// individual hangs the unraveling of the product of its partners.
pub fn materialize_iasl(
    logic: Logic,
    abox: &ABox,
    sim: &Simulation,
    interp: &Interpretation,
    depth: usize,
    sig: &Signature,
) -> Result<Interpretation> {
    let ai = abox.to_interpretation();
    audit_simulation(logic, &ai, interp, &sim.pairs).map_err(|e| Error::Invalid(format!("not a simulation: {e}")))?;
    let sig = &sig.union(&abox.signature()).union(&interp.signature());
    let mut out = Interpretation::new();
    for a in ai.elements() {
        let ind = ai.individual_of(a).expect("ABox elements are named").clone();
        let e = out.add_individual(&ind);
        debug_assert_eq!(e, a);
        for c in &sig.concepts {
            if sim.image(a).iter().all(|&d| interp.labels(d).contains(c)) {
                out.add_label(e, c);
            }
        }
    }
    for (d, r, e) in ai.edges() {
        out.add_edge(r, d, e);
    }
    for a in ai.elements() {
        let parts: Vec<PointedInterp> =
            sim.image(a).into_iter().map(|d| PointedInterp { interp: interp.clone(), point: d }).collect();
        let prod = product(&parts, sig)?;
        let unr = unravel(logic.base, &prod.interp, prod.point, depth);
        let u = &unr.pointed.interp;
        // Path elements other than the root are appended; the root is `a`.
        let mut map = vec![a; u.len()];
        for p in u.elements().skip(1) {
            let q = out.add_element(format!("{}/{}", ai.element_name(a), u.element_name(p)));
            for c in u.labels(p) {
                out.add_label(q, c);
            }
            map[p] = q;
        }
        for (p, r, q) in u.edges() {
            out.add_edge(r, map[p], map[q]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_concept;
    use crate::query::Assertion;
    use crate::sim::max_simulation;

    fn abox(a: &[Assertion]) -> ABox {
        ABox::new(a.iter().cloned()).unwrap()
    }

    #[test]
    fn empty_product_is_maximal() {
        let p = product(&[], &Signature::new(["A"], ["r"])).unwrap();
        assert_eq!(p.interp.len(), 1);
        assert_eq!(p.interp.element_name(0), "()");
        assert!(p.interp.has_label(0, "A"));
        assert!(p.interp.has_edge("r", 0, 0));
    }

    #[test]
    fn unary_product_is_a_copy() {
        let i = abox(&[Assertion::role("r", "a", "b"), Assertion::concept("A", "b")]).to_interpretation();
        let p = product(&[PointedInterp::new(i.clone(), 0).unwrap()], &Signature::default()).unwrap();
        assert_eq!(p.interp.len(), 2);
        assert_eq!(p.interp.edge_count(), 1);
        assert!(p.interp.has_label(1, "A"));
    }

    #[test]
    fn binary_product_labels_and_edges() {
        let i = abox(&[Assertion::role("r", "a", "b"), Assertion::concept("A", "b"), Assertion::concept("B", "b")]).to_interpretation();
        let j = abox(&[Assertion::role("r", "c", "c"), Assertion::concept("A", "c")]).to_interpretation();
        let p = product(&[PointedInterp::new(i, 0).unwrap(), PointedInterp::new(j, 0).unwrap()], &Signature::default()).unwrap();
        assert_eq!(p.interp.len(), 2);
        let b_c = p.interp.element_by_name("(b,c)").unwrap();
        assert!(p.interp.has_label(b_c, "A"));
        assert!(!p.interp.has_label(b_c, "B"));
        assert!(p.interp.has_edge("r", p.point, b_c));
    }

    #[test]
    fn unravel_loop_into_path() {
        let i = abox(&[Assertion::role("r", "d", "d")]).to_interpretation();
        let u = unravel(Base::El, &i, 0, 3);
        assert_eq!(u.pointed.interp.len(), 4);
        assert_eq!(u.pointed.interp.edge_count(), 3);
        let u0 = unravel(Base::Eli, &i, 0, 0);
        assert_eq!(u0.pointed.interp.len(), 1);
    }

    #[test]
    fn characteristic_concepts() {
        let i = abox(&[Assertion::concept("A", "d"), Assertion::concept("B", "d")]).to_interpretation();
        assert_eq!(char_concept(Base::El, &i, 0, 0).to_string(), "(and A B)");
        let i = abox(&[Assertion::role("r", "d", "d"), Assertion::concept("A", "d")]).to_interpretation();
        let a = Concept::atom("A");
        let expect = Concept::and([a.clone(), Concept::some("r", Concept::and([a.clone(), Concept::some("r", a.clone())]))]);
        assert_eq!(char_concept(Base::El, &i, 0, 2), expect);
        assert_eq!(char_concept(Base::El, &i, 0, 2).role_depth(), 2);
    }

    #[test]
    fn tree_concepts() {
        let q = Cq::new([QAtom::concept("A", Term::var("x"))]).unwrap();
        let t = TreeCq::new(q, Term::var("x"), Base::El).unwrap();
        assert_eq!(tree_concept(&t), Concept::atom("A"));
        let q = Cq::new([QAtom::role("r", Term::ind("a"), Term::var("x")), QAtom::concept("B", Term::var("x"))]).unwrap();
        let t = TreeCq::new(q.clone(), Term::ind("a"), Base::El).unwrap();
        assert_eq!(tree_concept(&t), Concept::some("r", Concept::atom("B")));
        // Rooted at the leaf: fine for ELI, not for EL.
        assert!(TreeCq::new(q.clone(), Term::var("x"), Base::El).is_err());
        let q2 = Cq::new([QAtom::role("r", Term::var("y"), Term::var("x")), QAtom::concept("B", Term::var("x"))]).unwrap();
        let t = TreeCq::new(q2, Term::var("x"), Base::Eli).unwrap();
        assert_eq!(tree_concept(&t), Concept::and([Concept::atom("B"), Concept::exists(Role::inv("r"), Concept::top())]));
        let cyc = Cq::new([QAtom::role("r", Term::var("x"), Term::var("y")), QAtom::role("s", Term::var("x"), Term::var("y"))]).unwrap();
        assert!(TreeCq::new(cyc, Term::var("x"), Base::Eli).is_err());
    }

    fn prep_witness() -> Interpretation {
        let mut i = Interpretation::new();
        let a = i.add_individual(&Sym::new("a"));
        let c = i.add_element("c");
        let (sa, sb, r) = (Sym::new("A"), Sym::new("B"), Sym::new("r"));
        i.add_label(a, &sa);
        i.add_label(c, &sa);
        i.add_label(c, &sb);
        i.add_edge(&r, a, c);
        i.add_edge(&r, c, c);
        i
    }

    #[test]
    fn image_satisfaction_on_the_size_two_witness() {
        let i = prep_witness();
        let loop_box = abox(&[Assertion::role("r", "a", "a")]);
        let s = max_simulation(Logic::ELI, &loop_box.to_interpretation(), &i);
        assert_eq!(s.image(0), BTreeSet::from([1]));
        assert!(sim_image_satisfies(Logic::ELI, &loop_box, &s, &i, &Concept::atom("B"), &Sym::new("a")).unwrap());
        let a_box = abox(&[Assertion::concept("A", "a")]);
        let s = max_simulation(Logic::EL, &a_box.to_interpretation(), &i);
        let c = Concept::some("r", Concept::atom("A"));
        assert!(sim_image_satisfies(Logic::EL, &a_box, &s, &i, &c, &Sym::new("a")).unwrap());
        // The empty relation is a simulation for EL; its image is vacuous.
        assert!(sim_image_satisfies(Logic::EL, &a_box, &Simulation::default(), &i, &Concept::atom("Z"), &Sym::new("a")).unwrap());
        // A relation breaking (Atom) is rejected.
        let bad = Simulation { pairs: BTreeSet::from([(0, 0)]), total: true };
        let b_box = abox(&[Assertion::concept("Z", "a")]);
        assert!(sim_image_satisfies(Logic::EL, &b_box, &bad, &i, &Concept::top(), &Sym::new("a")).is_err());
    }

    #[test]
    fn materialization_basics() {
        let i = prep_witness();
        let a_box = abox(&[Assertion::concept("A", "a"), Assertion::role("r", "a", "b")]);
        let sig = Signature::new(["A", "B"], ["r"]);
        let m = materialize_iasl(Logic::EL, &a_box, &Simulation::default(), &i, 0, &sig).unwrap();
        assert_eq!(m.len(), 2);
        for e in m.elements() {
            assert!(m.has_label(e, "A") && m.has_label(e, "B"));
        }
        assert_eq!(m.edge_count(), 1);
        let s = max_simulation(Logic::EL, &a_box.to_interpretation(), &i);
        let m = materialize_iasl(Logic::EL, &a_box, &s, &i, 2, &sig).unwrap();
        let c = Concept::some("r", Concept::atom("A"));
        let a = m.individual("a").unwrap();
        assert_eq!(eval_concept(&c, &m).contains(&a), sim_image_satisfies(Logic::EL, &a_box, &s, &i, &c, &Sym::new("a")).unwrap());
    }
}

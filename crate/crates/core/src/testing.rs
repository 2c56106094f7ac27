//! Random generators and brute-force oracles for the test suites.
//!
//! Everything here is deliberately naive: oracles follow the definitions
//! directly (recursive k-simulation, fixpoint deletion, exhaustive
//! homomorphism and model enumeration) so they can check the real
//! implementations.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::{is_model, satisfies_abox};
use crate::interp::{Elem, Interpretation, PointedInterp, Signature};
use crate::query::{ABox, Assertion, Cq, Example, ExampleCollection, QAtom, QueryLang, Term, Ucq};
use crate::syntax::{Base, Ci, Concept, Logic, Ontology, Role, Sym};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Fixtures

fn ex(abox: &[Assertion], q: Cq) -> Example {
    Example::with_query(ABox::new(abox.iter().cloned()).unwrap(), Ucq::single(q)).unwrap()
}

fn cq(atoms: &[QAtom]) -> Cq {
    Cq::new(atoms.iter().cloned()).unwrap()
}

fn mentor(who: &str, what: &str) -> Cq {
    cq(&[QAtom::role("mentor", Term::ind(who), Term::var("x")), QAtom::concept(what, Term::var("x"))])
}

/// New hires get mentors; remote new hires get senior ones; a plain new
/// hire must not be guaranteed a senior mentor. EL, CQs.
pub fn mentor_examples() -> ExampleCollection {
    let p1 = ex(&[Assertion::concept("NewHire", "jane")], mentor("jane", "Emp"));
    let p2 = ex(
        &[Assertion::concept("NewHire", "alex"), Assertion::concept("RemoteWorker", "alex")],
        mentor("alex", "SeniorEmp"),
    );
    let n = ex(&[Assertion::concept("NewHire", "bob")], mentor("bob", "SeniorEmp"));
    ExampleCollection::new(vec![p1, p2], vec![n], Logic::EL, QueryLang::Cq).unwrap()
}

/// The hand-written fit for [`mentor_examples`], optionally with
/// `SeniorEmp ⊑ Emp`.
pub fn mentor_ontology(senior_is_emp: bool) -> Ontology {
    let mut cis = vec![
        Ci::new(Concept::atom("NewHire"), Concept::some("mentor", Concept::atom("Emp"))),
        Ci::new(
            Concept::and([Concept::atom("NewHire"), Concept::atom("RemoteWorker")]),
            Concept::some("mentor", Concept::atom("SeniorEmp")),
        ),
    ];
    if senior_is_emp {
        cis.push(Ci::new(Concept::atom("SeniorEmp"), Concept::atom("Emp")));
    }
    Ontology::new(cis)
}

/// Consistency mode. Positive: `a1`, `a2` point to different `r`-successors;
/// negative: to the same one. Only logics with inverses can tell them apart.
pub fn converging_edges(logic: Logic) -> ExampleCollection {
    let pos = ABox::new([
        Assertion::role("r", "a1", "b1"),
        Assertion::role("r", "a2", "b2"),
        Assertion::concept("A1", "a1"),
        Assertion::concept("A2", "a2"),
    ])
    .unwrap();
    let neg = ABox::new([
        Assertion::role("r", "a1", "b"),
        Assertion::role("r", "a2", "b"),
        Assertion::concept("A1", "a1"),
        Assertion::concept("A2", "a2"),
    ])
    .unwrap();
    ExampleCollection::new(vec![Example::consistency(pos)], vec![Example::consistency(neg)], logic, QueryLang::Consistency)
        .unwrap()
}

/// `∃r⁻.A1 ⊓ ∃r⁻.A2 ⊑ ⊥`.
pub fn converging_edges_ontology() -> Ontology {
    let back = |a: &str| Concept::exists(Role::inv("r"), Concept::atom(a));
    Ontology::new([Ci::new(Concept::and([back("A1"), back("A2")]), Concept::bot())])
}

/// Atomic queries. Positive `({A1(a), B(b)}, A2(a))`, negative
/// `({A1(a)}, A2(a))`: only ⊥ can separate them.
pub fn bottom_matters(logic: Logic) -> ExampleCollection {
    let pos = ABox::new([Assertion::concept("A1", "a"), Assertion::concept("B", "b")]).unwrap();
    let neg = ABox::new([Assertion::concept("A1", "a")]).unwrap();
    ExampleCollection::new(
        vec![Example::with_query(pos, Ucq::aq("A2", "a")).unwrap()],
        vec![Example::with_query(neg, Ucq::aq("A2", "a")).unwrap()],
        logic,
        QueryLang::Aq,
    )
    .unwrap()
}

/// Positives `({A(a)}, ∃x r(a,x) ∧ A(x))` and `({r(a,a)}, B(a))`, negative
/// `({A(a)}, B(a))`. No EL fit, but an ELI fit with an infinite `r`-chain.
pub fn loop_examples(logic: Logic) -> ExampleCollection {
    let p1 = ex(
        &[Assertion::concept("A", "a")],
        cq(&[QAtom::role("r", Term::ind("a"), Term::var("x")), QAtom::concept("A", Term::var("x"))]),
    );
    let p2 = ex(&[Assertion::role("r", "a", "a")], cq(&[QAtom::concept("B", Term::ind("a"))]));
    let n = ex(&[Assertion::concept("A", "a")], cq(&[QAtom::concept("B", Term::ind("a"))]));
    ExampleCollection::new(vec![p1, p2], vec![n], logic, QueryLang::Cq).unwrap()
}

/// `{A ⊑ ∃r.A, ∃r⁻.⊤ ⊑ B}`.
pub fn loop_ontology() -> Ontology {
    Ontology::new([
        Ci::new(Concept::atom("A"), Concept::some("r", Concept::atom("A"))),
        Ci::new(Concept::exists(Role::inv("r"), Concept::top()), Concept::atom("B")),
    ])
}

/// [`loop_examples`] plus the positive `({B(c), r(b,c)}, B(b))`, which
/// propagates `B` backwards along `r`. No fit in any of the four logics.
pub fn loop_with_back_propagation(logic: Logic) -> ExampleCollection {
    let mut e = loop_examples(logic);
    e.positives.push(ex(
        &[Assertion::concept("B", "c"), Assertion::role("r", "b", "c")],
        cq(&[QAtom::concept("B", Term::ind("b"))]),
    ));
    e
}

// ---------------------------------------------------------------------------
// Generators

/// Concept names `A`, `B` and role names `r`, `s`.
pub fn small_signature() -> Signature {
    Signature::new(["A", "B"], ["r", "s"])
}

/// Elements `e0..`, each label with probability `p_label`, each possible
/// edge with probability `p_edge`.
pub fn random_interpretation(rng: &mut impl Rng, n: usize, sig: &Signature, p_label: f64, p_edge: f64) -> Interpretation {
    let mut i = Interpretation::new();
    for k in 0..n {
        i.add_element(format!("e{k}"));
    }
    for d in 0..n {
        for a in &sig.concepts {
            if rng.gen_bool(p_label) {
                i.add_label(d, a);
            }
        }
        for r in &sig.roles {
            for e in 0..n {
                if rng.gen_bool(p_edge) {
                    i.add_edge(r, d, e);
                }
            }
        }
    }
    i
}

pub fn random_pointed(rng: &mut impl Rng, max_size: usize, sig: &Signature) -> PointedInterp {
    let n = rng.gen_range(1..=max_size);
    let i = random_interpretation(rng, n, sig, 0.4, 0.3);
    let d = rng.gen_range(0..n);
    PointedInterp::new(i, d).unwrap()
}

/// A random ABox over individuals `prefix0..`; never empty.
pub fn random_abox(rng: &mut impl Rng, n_inds: usize, sig: &Signature, prefix: &str, n_assertions: usize) -> ABox {
    let inds: Vec<String> = (0..n_inds).map(|k| format!("{prefix}{k}")).collect();
    let concepts: Vec<&Sym> = sig.concepts.iter().collect();
    let roles: Vec<&Sym> = sig.roles.iter().collect();
    let mut out = Vec::new();
    for _ in 0..n_assertions.max(1) {
        let a = inds.choose(rng).unwrap();
        if roles.is_empty() || (!concepts.is_empty() && rng.gen_bool(0.5)) {
            out.push(Assertion::concept(concepts.choose(rng).unwrap().as_str(), a));
        } else {
            let b = inds.choose(rng).unwrap();
            out.push(Assertion::role(roles.choose(rng).unwrap().as_str(), a, b));
        }
    }
    ABox::new(out).unwrap()
}

/// A random concept of role depth at most `depth`; inverses only when
/// `base` is ELI.
pub fn random_concept(rng: &mut impl Rng, depth: usize, sig: &Signature, base: Base) -> Concept {
    let concepts: Vec<&Sym> = sig.concepts.iter().collect();
    let roles: Vec<&Sym> = sig.roles.iter().collect();
    let n = rng.gen_range(1..=2);
    let mut parts = Vec::new();
    for _ in 0..n {
        if depth > 0 && !roles.is_empty() && rng.gen_bool(0.4) {
            let name = (*roles.choose(rng).unwrap()).clone();
            let role = if base == Base::Eli && rng.gen_bool(0.5) { Role::inv(name) } else { Role::new(name) };
            parts.push(Concept::exists(role, random_concept(rng, depth - 1, sig, base)));
        } else if !concepts.is_empty() && rng.gen_bool(0.9) {
            parts.push(Concept::atom((*concepts.choose(rng).unwrap()).clone()));
        }
    }
    Concept::and(parts)
}

/// A random EL⊥ ontology with up to `max_cis` CIs. With probability
/// `p_sim` a left-hand side is an EL simulation quantifier over a tiny
/// interpretation; right-hand sides are ⊥ with probability `p_bot`.
pub fn random_el_ontology(rng: &mut impl Rng, max_cis: usize, sig: &Signature, p_sim: f64, p_bot: f64) -> Ontology {
    let n = rng.gen_range(1..=max_cis);
    let mut cis = Vec::new();
    for _ in 0..n {
        let lhs = if rng.gen_bool(p_sim) {
            Concept::sim(Base::El, random_pointed(rng, 2, sig))
        } else {
            random_concept(rng, 1, sig, Base::El)
        };
        let rhs = if rng.gen_bool(p_bot) { Concept::bot() } else { random_concept(rng, 1, sig, Base::El) };
        cis.push(Ci::new(lhs, rhs));
    }
    Ontology::new(cis)
}

/// A random Boolean or unary-free CQ mixing variables `x0..` with the
/// given individuals.
pub fn random_cq(rng: &mut impl Rng, n_vars: usize, inds: &[Sym], sig: &Signature, n_atoms: usize) -> Cq {
    let mut terms: Vec<Term> = (0..n_vars).map(|k| Term::var(&format!("x{k}"))).collect();
    terms.extend(inds.iter().map(|a| Term::ind(a.as_str())));
    let concepts: Vec<&Sym> = sig.concepts.iter().collect();
    let roles: Vec<&Sym> = sig.roles.iter().collect();
    let mut atoms = Vec::new();
    for _ in 0..n_atoms.max(1) {
        let t = terms.choose(rng).unwrap().clone();
        if roles.is_empty() || (!concepts.is_empty() && rng.gen_bool(0.4)) {
            atoms.push(QAtom::concept(concepts.choose(rng).unwrap().as_str(), t));
        } else {
            let t2 = terms.choose(rng).unwrap().clone();
            atoms.push(QAtom::role(roles.choose(rng).unwrap().as_str(), t, t2));
        }
    }
    Cq::new(atoms).unwrap()
}

// ---------------------------------------------------------------------------
// Oracles

fn steps(base: Base, i: &Interpretation, d: Elem) -> Vec<(Role, Elem)> {
    let mut out: Vec<(Role, Elem)> = i.out_edges(d).iter().map(|(r, x)| (Role::new(r.clone()), *x)).collect();
    if base == Base::Eli {
        out.extend(i.in_edges(d).iter().map(|(r, x)| (Role::inv(r.clone()), *x)));
    }
    out
}

/// `(I, d) ≼^k (J, e)` straight from the recursive definition (no totality).
pub fn brute_k_simulates(base: Base, k: usize, i: &Interpretation, d: Elem, j: &Interpretation, e: Elem) -> bool {
    if !i.labels(d).is_subset(j.labels(e)) {
        return false;
    }
    if k == 0 {
        return true;
    }
    steps(base, i, d).into_iter().all(|(r, d2)| j.neighbors(e, &r).any(|e2| brute_k_simulates(base, k - 1, i, d2, j, e2)))
}

/// The greatest simulation by deleting violating pairs until stable.
pub fn naive_greatest_simulation(base: Base, i: &Interpretation, j: &Interpretation) -> BTreeSet<(Elem, Elem)> {
    let mut rel: BTreeSet<(Elem, Elem)> =
        i.elements().flat_map(|d| j.elements().map(move |e| (d, e))).filter(|&(d, e)| i.labels(d).is_subset(j.labels(e))).collect();
    loop {
        let bad: Vec<(Elem, Elem)> = rel
            .iter()
            .copied()
            .filter(|&(d, e)| !steps(base, i, d).into_iter().all(|(r, d2)| j.neighbors(e, &r).any(|e2| rel.contains(&(d2, e2)))))
            .collect();
        if bad.is_empty() {
            return rel;
        }
        for p in bad {
            rel.remove(&p);
        }
    }
}

/// A homomorphism from `q` into `i` by trying every assignment of the
/// variables.
pub fn brute_cq_hom(q: &Cq, i: &Interpretation) -> bool {
    let vars: Vec<Sym> = q.vars().into_iter().collect();
    let n = i.len();
    if n == 0 {
        return false;
    }
    if q.individuals().iter().any(|a| i.individual(a).is_none()) {
        return false;
    }
    let mut assign = vec![0usize; vars.len()];
    loop {
        let map: BTreeMap<&Sym, Elem> = vars.iter().zip(&assign).map(|(v, &e)| (v, e)).collect();
        let at = |t: &Term| if t.is_var() { map[t.name()] } else { i.individual(t.name()).unwrap() };
        let ok = q.atoms().iter().all(|a| match a {
            QAtom::Concept(c, t) => i.has_label(at(t), c.as_str()),
            QAtom::Role(r, s, t) => i.has_edge(r.as_str(), at(s), at(t)),
        });
        if ok {
            return true;
        }
        let mut k = 0;
        loop {
            if k == assign.len() {
                return false;
            }
            assign[k] += 1;
            if assign[k] < n {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

/// Calls `f` on every interpretation over `sig` that extends the ABox (its
/// individuals are the first elements, distinct) with at most `max_size`
/// elements and is a model of `a` and `o`. Stops early when `f` returns
/// false; returns whether it ran to completion.
pub fn for_each_small_model(a: &ABox, o: &Ontology, sig: &Signature, max_size: usize, f: &mut dyn FnMut(&Interpretation) -> bool) -> bool {
    let base = a.to_interpretation();
    let concepts: Vec<&Sym> = sig.concepts.iter().collect();
    let roles: Vec<&Sym> = sig.roles.iter().collect();
    for n in base.len().max(1)..=max_size {
        let mut skel = base.clone();
        while skel.len() < n {
            let k = skel.len();
            skel.add_element(format!("m{k}"));
        }
        // Free facts: labels and edges not already in the ABox.
        let mut free: Vec<(Option<&Sym>, &Sym, Elem, Elem)> = Vec::new();
        for d in 0..n {
            for c in &concepts {
                if !skel.labels(d).contains(*c) {
                    free.push((None, c, d, d));
                }
            }
            for r in &roles {
                for e in 0..n {
                    if !skel.has_edge(r.as_str(), d, e) {
                        free.push((Some(r), r, d, e));
                    }
                }
            }
        }
        assert!(free.len() < 24, "model enumeration over {} free facts is too large", free.len());
        for mask in 0u32..(1u32 << free.len()) {
            let mut j = skel.clone();
            for (bit, (role, name, d, e)) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    if role.is_some() {
                        j.add_edge(name, *d, *e);
                    } else {
                        j.add_label(*d, name);
                    }
                }
            }
            if satisfies_abox(&j, a) && is_model(&j, o) && !f(&j) {
                return false;
            }
        }
    }
    true
}

/// Some proper 2-coloring of the subgraph on `1..=protected` has no
/// extension to a proper 3-coloring of the whole graph.
pub fn coloring_extension_fails(n: usize, edges: &[(usize, usize)], protected: usize) -> bool {
    let proper = |c: &[usize]| edges.iter().all(|&(u, v)| u > c.len() || v > c.len() || c[u - 1] != c[v - 1]);
    let mut fails = false;
    for_each_coloring(protected, 2, &mut |p: &[usize]| {
        if !proper(p) {
            return;
        }
        let mut extends = false;
        for_each_coloring(n - protected, 3, &mut |rest: &[usize]| {
            let full: Vec<usize> = p.iter().chain(rest).copied().collect();
            extends |= proper(&full);
        });
        fails |= !extends;
    });
    fails
}

fn for_each_coloring(len: usize, colors: usize, f: &mut dyn FnMut(&[usize])) {
    let mut c = vec![0usize; len];
    loop {
        f(&c);
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            c[k] += 1;
            if c[k] < colors {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

/// Every simple undirected graph on `1..=n` as an edge list.
pub fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    (0u32..(1 << pairs.len())).map(|mask| pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect()).collect()
}

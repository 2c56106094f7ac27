//! Instances of CQ fitting built from graph coloring: the instance has a fit
//! iff some 2-coloring of the protected vertices `1..=k` does not extend to
//! a 3-coloring of the whole graph.

use crate::error::{invalid, Result};
use crate::query::{ABox, Assertion, Cq, QAtom, Example, ExampleCollection, QueryLang, Term, Ucq};
use crate::syntax::Logic;

fn var(v: usize) -> Term {
    Term::var(&format!("x{v}"))
}

fn ind(s: &str) -> Term {
    Term::ind(s)
}

/// Vertices are `1..=n`; the protected ones are `1..=protected`.
pub fn gen_coloring_instance(n: usize, edges: &[(usize, usize)], protected: usize, logic: Logic) -> Result<ExampleCollection> {
    if protected > n {
        return invalid(format!("{protected} protected vertices but only {n} vertices"));
    }
    for &(u, v) in edges {
        if u == 0 || v == 0 || u > n || v > n {
            return invalid(format!("edge ({u},{v}) leaves the vertex range 1..={n}"));
        }
        if u == v {
            return invalid(format!("self-loop on vertex {u}"));
        }
    }
    let in_p = |v: usize| v <= protected;
    let both_ways = |u: usize, v: usize| [QAtom::role("r", var(u), var(v)), QAtom::role("r", var(v), var(u))];

    let mut a2 = vec![
        Assertion::role("r", "b1", "b2"),
        Assertion::role("r", "b2", "b1"),
        Assertion::concept("T1", "b1"),
        Assertion::concept("T2", "b2"),
    ];
    for x in ["b1", "b2"] {
        for y in ["b1", "b2"] {
            a2.push(Assertion::role("s", x, y));
        }
    }
    let mut qp = Vec::new();
    for v in 1..=protected {
        qp.push(QAtom::role("s", var(v), var(v)));
        qp.push(QAtom::concept(&format!("V{v}"), var(v)));
        qp.push(QAtom::role("s", ind("b1"), var(v)));
    }
    for &(u, v) in edges {
        if in_p(u) && in_p(v) {
            qp.extend(both_ways(u, v));
        }
    }
    if qp.is_empty() {
        qp.push(QAtom::concept("T1", ind("b1")));
    }

    let names = ["a1", "a2", "a3"];
    let mut a3 = vec![Assertion::concept("T1", "a1"), Assertion::concept("T2", "a2")];
    for x in names {
        for y in names {
            a3.push(Assertion::role("s", x, y));
            if x != y {
                a3.push(Assertion::role("r", x, y));
            }
        }
    }
    let mut qg = Vec::new();
    for v in 1..=n {
        qg.push(QAtom::role("s", ind("a1"), var(v)));
        if in_p(v) {
            qg.push(QAtom::concept(&format!("V{v}"), var(v)));
        }
    }
    for &(u, v) in edges {
        qg.extend(both_ways(u, v));
    }

    let pos = Example::with_query(ABox::new(a2)?, Ucq::single(Cq::new(qp)?))?;
    let neg = Example::with_query(ABox::new(a3)?, Ucq::single(Cq::new(qg)?))?;
    ExampleCollection::new(vec![pos], vec![neg], logic, QueryLang::Cq)
}

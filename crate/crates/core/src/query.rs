//! ABoxes, conjunctive queries and example collections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::interp::{Interpretation, Signature};
use crate::syntax::{Concept, Logic, Sym};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Assertion {
    /// `A(a)`
    Concept(Sym, Sym),
    /// `r(a, b)`
    Role(Sym, Sym, Sym),
}

impl Assertion {
    pub fn concept(a: &str, ind: &str) -> Assertion {
        Assertion::Concept(Sym::new(a), Sym::new(ind))
    }

    pub fn role(r: &str, a: &str, b: &str) -> Assertion {
        Assertion::Role(Sym::new(r), Sym::new(a), Sym::new(b))
    }

    fn rename(&self, f: &impl Fn(&Sym) -> Sym) -> Assertion {
        match self {
            Assertion::Concept(a, x) => Assertion::Concept(a.clone(), f(x)),
            Assertion::Role(r, x, y) => Assertion::Role(r.clone(), f(x), f(y)),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Concept(a, x) => write!(f, "({a} {x})"),
            Assertion::Role(r, x, y) => write!(f, "({r} {x} {y})"),
        }
    }
}

/// A finite nonempty set of assertions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ABox {
    assertions: BTreeSet<Assertion>,
}

impl ABox {
    pub fn new<I: IntoIterator<Item = Assertion>>(assertions: I) -> Result<ABox> {
        let assertions: BTreeSet<Assertion> = assertions.into_iter().collect();
        if assertions.is_empty() {
            return invalid("empty ABox");
        }
        Ok(ABox { assertions })
    }

    pub fn assertions(&self) -> &BTreeSet<Assertion> {
        &self.assertions
    }

    pub fn len(&self) -> usize {
        self.assertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assertions.is_empty()
    }

    pub fn contains(&self, a: &Assertion) -> bool {
        self.assertions.contains(a)
    }

    pub fn individuals(&self) -> BTreeSet<Sym> {
        let mut s = BTreeSet::new();
        for a in &self.assertions {
            match a {
                Assertion::Concept(_, x) => {
                    s.insert(x.clone());
                }
                Assertion::Role(_, x, y) => {
                    s.insert(x.clone());
                    s.insert(y.clone());
                }
            }
        }
        s
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for a in &self.assertions {
            match a {
                Assertion::Concept(c, _) => {
                    sig.concepts.insert(c.clone());
                }
                Assertion::Role(r, _, _) => {
                    sig.roles.insert(r.clone());
                }
            }
        }
        sig
    }

    /// The ABox as an interpretation: one element per individual, in sorted
    /// order, every individual named.
    pub fn to_interpretation(&self) -> Interpretation {
        let mut i = Interpretation::new();
        for ind in self.individuals() {
            i.add_individual(&ind);
        }
        for a in &self.assertions {
            match a {
                Assertion::Concept(c, x) => {
                    let e = i.individual(x).expect("individual added");
                    i.add_label(e, c);
                }
                Assertion::Role(r, x, y) => {
                    let (d, e) = (i.individual(x).expect("added"), i.individual(y).expect("added"));
                    i.add_edge(r, d, e);
                }
            }
        }
        i
    }

    pub fn rename(&self, f: impl Fn(&Sym) -> Sym) -> ABox {
        ABox { assertions: self.assertions.iter().map(|a| a.rename(&f)).collect() }
    }

    pub fn union(&self, other: &ABox) -> ABox {
        ABox { assertions: self.assertions.union(&other.assertions).cloned().collect() }
    }
}

impl fmt::Display for ABox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.assertions {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Sym),
    Ind(Sym),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(Sym::new(x))
    }

    pub fn ind(a: &str) -> Term {
        Term::Ind(Sym::new(a))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn name(&self) -> &Sym {
        match self {
            Term::Var(x) | Term::Ind(x) => x,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "?{x}"),
            Term::Ind(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum QAtom {
    Concept(Sym, Term),
    Role(Sym, Term, Term),
}

impl QAtom {
    pub fn concept(a: &str, t: Term) -> QAtom {
        QAtom::Concept(Sym::new(a), t)
    }

    pub fn role(r: &str, s: Term, t: Term) -> QAtom {
        QAtom::Role(Sym::new(r), s, t)
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            QAtom::Concept(_, t) => vec![t],
            QAtom::Role(_, s, t) => vec![s, t],
        }
    }

    pub fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> QAtom {
        match self {
            QAtom::Concept(a, t) => QAtom::Concept(a.clone(), f(t)),
            QAtom::Role(r, s, t) => QAtom::Role(r.clone(), f(s), f(t)),
        }
    }

    /// The assertion this atom denotes if it mentions no variables.
    pub fn as_assertion(&self) -> Option<Assertion> {
        match self {
            QAtom::Concept(a, Term::Ind(x)) => Some(Assertion::Concept(a.clone(), x.clone())),
            QAtom::Role(r, Term::Ind(x), Term::Ind(y)) => Some(Assertion::Role(r.clone(), x.clone(), y.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for QAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QAtom::Concept(a, t) => write!(f, "({a} {t})"),
            QAtom::Role(r, s, t) => write!(f, "({r} {s} {t})"),
        }
    }
}

/// A conjunctive query: a nonempty set of atoms, all variables existential.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cq {
    atoms: Vec<QAtom>,
}

impl Cq {
    pub fn new<I: IntoIterator<Item = QAtom>>(atoms: I) -> Result<Cq> {
        let mut atoms: Vec<QAtom> = atoms.into_iter().collect();
        if atoms.is_empty() {
            return invalid("conjunctive query without atoms");
        }
        atoms.sort();
        atoms.dedup();
        Ok(Cq { atoms })
    }

    pub fn atoms(&self) -> &[QAtom] {
        &self.atoms
    }

    pub fn terms(&self) -> BTreeSet<Term> {
        self.atoms.iter().flat_map(|a| a.terms().into_iter().cloned()).collect()
    }

    pub fn vars(&self) -> BTreeSet<Sym> {
        self.terms()
            .into_iter()
            .filter_map(|t| match t {
                Term::Var(x) => Some(x),
                Term::Ind(_) => None,
            })
            .collect()
    }

    pub fn individuals(&self) -> BTreeSet<Sym> {
        self.terms()
            .into_iter()
            .filter_map(|t| match t {
                Term::Ind(x) => Some(x),
                Term::Var(_) => None,
            })
            .collect()
    }

    pub fn signature(&self) -> Signature {
        let mut s = Signature::default();
        for a in &self.atoms {
            match a {
                QAtom::Concept(c, _) => {
                    s.concepts.insert(c.clone());
                }
                QAtom::Role(r, _, _) => {
                    s.roles.insert(r.clone());
                }
            }
        }
        s
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Term) -> Cq {
        Cq::new(self.atoms.iter().map(|a| a.map_terms(&f))).expect("mapping keeps atoms")
    }

    /// An atomic query `A(a)`, if this CQ is one.
    pub fn as_aq(&self) -> Option<(&Sym, &Sym)> {
        match self.atoms.as_slice() {
            [QAtom::Concept(a, Term::Ind(x))] => Some((a, x)),
            _ => None,
        }
    }

    /// Every variable is connected to an individual in the query graph.
    pub fn is_rooted(&self) -> bool {
        let terms: Vec<Term> = self.terms().into_iter().collect();
        let idx: BTreeMap<&Term, usize> = terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut adj = vec![Vec::new(); terms.len()];
        for a in &self.atoms {
            if let QAtom::Role(_, s, t) = a {
                adj[idx[s]].push(idx[t]);
                adj[idx[t]].push(idx[s]);
            }
        }
        let mut seen = vec![false; terms.len()];
        let mut stack: Vec<usize> = terms.iter().enumerate().filter(|(_, t)| !t.is_var()).map(|(i, _)| i).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

impl fmt::Display for Cq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(cq")?;
        for a in &self.atoms {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

/// A nonempty disjunction of CQs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ucq {
    cqs: Vec<Cq>,
}

impl Ucq {
    pub fn new<I: IntoIterator<Item = Cq>>(cqs: I) -> Result<Ucq> {
        let mut cqs: Vec<Cq> = cqs.into_iter().collect();
        if cqs.is_empty() {
            return invalid("union of conjunctive queries without disjuncts");
        }
        cqs.sort();
        cqs.dedup();
        Ok(Ucq { cqs })
    }

    pub fn single(cq: Cq) -> Ucq {
        Ucq { cqs: vec![cq] }
    }

    pub fn aq(concept: &str, ind: &str) -> Ucq {
        Ucq::single(Cq::new([QAtom::concept(concept, Term::ind(ind))]).expect("one atom"))
    }

    pub fn cqs(&self) -> &[Cq] {
        &self.cqs
    }

    pub fn individuals(&self) -> BTreeSet<Sym> {
        self.cqs.iter().flat_map(|c| c.individuals()).collect()
    }

    pub fn signature(&self) -> Signature {
        let mut s = Signature::default();
        for c in &self.cqs {
            s.extend(&c.signature());
        }
        s
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Term) -> Ucq {
        Ucq::new(self.cqs.iter().map(|c| c.map_terms(&f))).expect("nonempty")
    }

    pub fn as_aq(&self) -> Option<(&Sym, &Sym)> {
        match self.cqs.as_slice() {
            [c] => c.as_aq(),
            _ => None,
        }
    }
}

impl fmt::Display for Ucq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cqs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A query given by a concept: `C(a)` or `∃x.C(x)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ElQuery {
    Rooted(Concept, Sym),
    Existential(Concept),
}

impl ElQuery {
    pub fn concept(&self) -> &Concept {
        match self {
            ElQuery::Rooted(c, _) | ElQuery::Existential(c) => c,
        }
    }
}

impl fmt::Display for ElQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElQuery::Rooted(c, a) => write!(f, "(rooted {c} {a})"),
            ElQuery::Existential(c) => write!(f, "(exists {c})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum QueryLang {
    Consistency,
    Aq,
    Cq,
    Ucq,
}

impl QueryLang {
    pub fn tag(self) -> &'static str {
        match self {
            QueryLang::Consistency => "consistency",
            QueryLang::Aq => "aq",
            QueryLang::Cq => "cq",
            QueryLang::Ucq => "ucq",
        }
    }

    pub fn parse(s: &str) -> Option<QueryLang> {
        match s {
            "consistency" => Some(QueryLang::Consistency),
            "aq" => Some(QueryLang::Aq),
            "cq" => Some(QueryLang::Cq),
            "ucq" => Some(QueryLang::Ucq),
            _ => None,
        }
    }
}

/// An ABox with its query; `query` is `None` in consistency mode.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Example {
    pub abox: ABox,
    pub query: Option<Ucq>,
}

impl Example {
    pub fn new(abox: ABox, query: Option<Ucq>) -> Result<Example> {
        if let Some(q) = &query {
            let inds = abox.individuals();
            if let Some(x) = q.individuals().into_iter().find(|x| !inds.contains(x)) {
                return Err(Error::Invalid(format!("query individual {x} does not occur in its ABox")));
            }
        }
        Ok(Example { abox, query })
    }

    pub fn consistency(abox: ABox) -> Example {
        Example { abox, query: None }
    }

    pub fn with_query(abox: ABox, q: Ucq) -> Result<Example> {
        Example::new(abox, Some(q))
    }

    pub fn signature(&self) -> Signature {
        let mut s = self.abox.signature();
        if let Some(q) = &self.query {
            s.extend(&q.signature());
        }
        s
    }

    fn rename(&self, f: impl Fn(&Sym) -> Sym) -> Example {
        let abox = self.abox.rename(&f);
        let query = self.query.as_ref().map(|q| {
            q.map_terms(|t| match t {
                Term::Ind(x) => Term::Ind(f(x)),
                v => v.clone(),
            })
        });
        Example { abox, query }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExampleCollection {
    pub positives: Vec<Example>,
    pub negatives: Vec<Example>,
    pub logic: Logic,
    pub lang: QueryLang,
    /// Declared symbols beyond those occurring in the examples.
    pub declared: Signature,
}

impl ExampleCollection {
    pub fn new(positives: Vec<Example>, negatives: Vec<Example>, logic: Logic, lang: QueryLang) -> Result<ExampleCollection> {
        let e = ExampleCollection { positives, negatives, logic, lang, declared: Signature::default() };
        e.validate()?;
        Ok(e)
    }

    /// Checks that every query matches the declared query language.
    pub fn validate(&self) -> Result<()> {
        for (i, ex) in self.positives.iter().chain(&self.negatives).enumerate() {
            match (self.lang, &ex.query) {
                (QueryLang::Consistency, None) => {}
                (QueryLang::Consistency, Some(_)) => return invalid(format!("example {i}: consistency mode takes no query")),
                (_, None) => return invalid(format!("example {i}: missing query")),
                (QueryLang::Aq, Some(q)) if q.as_aq().is_none() => {
                    return invalid(format!("example {i}: query is not an atomic query"))
                }
                (QueryLang::Cq, Some(q)) if q.cqs().len() != 1 => {
                    return invalid(format!("example {i}: union given where a single CQ is expected"))
                }
                _ => {}
            }
            if let Some(q) = &ex.query {
                let inds = ex.abox.individuals();
                if let Some(x) = q.individuals().into_iter().find(|x| !inds.contains(x)) {
                    return invalid(format!("example {i}: query individual {x} does not occur in its ABox"));
                }
            }
        }
        Ok(())
    }

    pub fn all(&self) -> impl Iterator<Item = &Example> {
        self.positives.iter().chain(&self.negatives)
    }

    pub fn signature(&self) -> Signature {
        let mut s = self.declared.clone();
        for e in self.all() {
            s.extend(&e.signature());
        }
        s
    }

    pub fn positive_signature(&self) -> Signature {
        let mut s = Signature::default();
        for e in &self.positives {
            s.extend(&e.signature());
        }
        s
    }

    pub fn negative_signature(&self) -> Signature {
        let mut s = Signature::default();
        for e in &self.negatives {
            s.extend(&e.signature());
        }
        s
    }

    /// Prefixes every individual with its example's index (`p0:`, `n1:`, ...)
    /// so individual names are disjoint across examples.
    pub fn normalized(&self) -> ExampleCollection {
        let pos = self
            .positives
            .iter()
            .enumerate()
            .map(|(i, e)| e.rename(|x| Sym::from(format!("p{i}:{x}"))))
            .collect();
        let neg = self
            .negatives
            .iter()
            .enumerate()
            .map(|(i, e)| e.rename(|x| Sym::from(format!("n{i}:{x}"))))
            .collect();
        ExampleCollection { positives: pos, negatives: neg, logic: self.logic, lang: self.lang, declared: self.declared.clone() }
    }

    pub fn individuals_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        for e in self.all() {
            for x in e.abox.individuals() {
                if !seen.insert(x) {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn require_disjoint(&self) -> Result<()> {
        if self.individuals_disjoint() {
            Ok(())
        } else {
            invalid("individual names overlap across examples; normalize the collection first")
        }
    }
}

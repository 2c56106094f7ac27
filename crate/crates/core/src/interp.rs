//! Finite interpretations: labeled directed graphs with named individuals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Role, Sym};

/// Domain elements are dense indices `0..len()`.
pub type Elem = usize;

/// Concept and role names.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Signature {
    pub concepts: BTreeSet<Sym>,
    pub roles: BTreeSet<Sym>,
}

impl Signature {
    pub fn new<C, R>(concepts: C, roles: R) -> Signature
    where
        C: IntoIterator,
        C::Item: Into<Sym>,
        R: IntoIterator,
        R::Item: Into<Sym>,
    {
        Signature {
            concepts: concepts.into_iter().map(Into::into).collect(),
            roles: roles.into_iter().map(Into::into).collect(),
        }
    }

    pub fn extend(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
    }

    pub fn union(&self, other: &Signature) -> Signature {
        let mut s = self.clone();
        s.extend(other);
        s
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Interpretation {
    names: Vec<String>,
    labels: Vec<BTreeSet<Sym>>,
    out: Vec<BTreeSet<(Sym, Elem)>>,
    inc: Vec<BTreeSet<(Sym, Elem)>>,
    named: BTreeMap<Sym, Elem>,
}

impl Interpretation {
    pub fn new() -> Interpretation {
        Interpretation::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn add_element(&mut self, name: impl Into<String>) -> Elem {
        self.names.push(name.into());
        self.labels.push(BTreeSet::new());
        self.out.push(BTreeSet::new());
        self.inc.push(BTreeSet::new());
        self.names.len() - 1
    }

    /// Adds an element that interprets individual `ind`, named after it.
    pub fn add_individual(&mut self, ind: &Sym) -> Elem {
        if let Some(&e) = self.named.get(ind) {
            return e;
        }
        let e = self.add_element(ind.as_str());
        self.named.insert(ind.clone(), e);
        e
    }

    /// Lets `ind` denote `e`. Fails if `ind` already denotes another
    /// element or `e` already interprets a different individual.
    pub fn name_individual(&mut self, ind: &Sym, e: Elem) -> Result<()> {
        if let Some(&old) = self.named.get(ind) {
            if old != e {
                return Err(Error::Invalid(format!("individual {ind} already names another element")));
            }
            return Ok(());
        }
        if self.named.values().any(|&x| x == e) {
            return Err(Error::Invalid(format!("element {} already named", self.names[e])));
        }
        self.named.insert(ind.clone(), e);
        Ok(())
    }

    pub fn add_label(&mut self, e: Elem, concept: &Sym) -> bool {
        self.labels[e].insert(concept.clone())
    }

    pub fn add_edge(&mut self, role: &Sym, from: Elem, to: Elem) -> bool {
        let fresh = self.out[from].insert((role.clone(), to));
        self.inc[to].insert((role.clone(), from));
        fresh
    }

    /// Adds an edge for a possibly inverted role: `r⁻(d,e)` is `r(e,d)`.
    pub fn add_role_edge(&mut self, role: &Role, from: Elem, to: Elem) -> bool {
        if role.inverted {
            self.add_edge(&role.name, to, from)
        } else {
            self.add_edge(&role.name, from, to)
        }
    }

    pub fn element_name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn labels(&self, e: Elem) -> &BTreeSet<Sym> {
        &self.labels[e]
    }

    pub fn has_label(&self, e: Elem, concept: &str) -> bool {
        self.labels[e].contains(concept)
    }

    pub fn has_edge(&self, role: &str, from: Elem, to: Elem) -> bool {
        self.out[from].contains(&(Sym::new(role), to))
    }

    /// Outgoing edges as (role, target), sorted by role.
    pub fn out_edges(&self, e: Elem) -> &BTreeSet<(Sym, Elem)> {
        &self.out[e]
    }

    /// Incoming edges as (role, source), sorted by role.
    pub fn in_edges(&self, e: Elem) -> &BTreeSet<(Sym, Elem)> {
        &self.inc[e]
    }

    /// Elements reachable from `e` in one `role` step (inverse roles go
    /// against the edge direction).
    pub fn neighbors<'a>(&'a self, e: Elem, role: &'a Role) -> impl Iterator<Item = Elem> + 'a {
        let set = if role.inverted { &self.inc[e] } else { &self.out[e] };
        set.range((role.name.clone(), 0)..=(role.name.clone(), Elem::MAX)).map(|(_, x)| *x)
    }

    /// All (source, role, target) triples.
    pub fn edges(&self) -> impl Iterator<Item = (Elem, &Sym, Elem)> + '_ {
        self.out.iter().enumerate().flat_map(|(d, set)| set.iter().map(move |(r, e)| (d, r, *e)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    pub fn individual<Q: Ord + ?Sized>(&self, ind: &Q) -> Option<Elem>
    where
        Sym: std::borrow::Borrow<Q>,
    {
        self.named.get(ind).copied()
    }

    pub fn named(&self) -> &BTreeMap<Sym, Elem> {
        &self.named
    }

    /// The individual naming `e`, if any.
    pub fn individual_of(&self, e: Elem) -> Option<&Sym> {
        self.named.iter().find(|(_, &x)| x == e).map(|(s, _)| s)
    }

    pub fn extension(&self, concept: &str) -> BTreeSet<Elem> {
        self.elements().filter(|&e| self.labels[e].contains(concept)).collect()
    }

    pub fn concept_names(&self) -> BTreeSet<Sym> {
        self.labels.iter().flatten().cloned().collect()
    }

    pub fn role_names(&self) -> BTreeSet<Sym> {
        self.out.iter().flatten().map(|(r, _)| r.clone()).collect()
    }

    pub fn signature(&self) -> Signature {
        Signature { concepts: self.concept_names(), roles: self.role_names() }
    }

    /// Appends a copy of `other`; returns the offset of its elements. Named
    /// individuals of `other` keep their names and must not clash.
    pub fn append(&mut self, other: &Interpretation) -> Result<Elem> {
        let off = self.len();
        for e in other.elements() {
            self.add_element(other.names[e].clone());
            self.labels[off + e] = other.labels[e].clone();
        }
        for (d, r, e) in other.edges() {
            self.add_edge(r, off + d, off + e);
        }
        for (ind, &e) in &other.named {
            if self.named.contains_key(ind) {
                return Err(Error::Invalid(format!("individual {ind} occurs in two disjoint-union parts")));
            }
            self.named.insert(ind.clone(), off + e);
        }
        Ok(off)
    }

    /// Disjoint union; element names are kept as they are.
    pub fn disjoint_union<'a, I: IntoIterator<Item = &'a Interpretation>>(parts: I) -> Result<(Interpretation, Vec<Elem>)> {
        let mut u = Interpretation::new();
        let mut offs = Vec::new();
        for p in parts {
            offs.push(u.append(p)?);
        }
        Ok((u, offs))
    }

    /// Restriction to elements satisfying `keep`, renumbered in order.
    pub fn restrict(&self, keep: impl Fn(Elem) -> bool) -> (Interpretation, Vec<Option<Elem>>) {
        let mut map = vec![None; self.len()];
        let mut r = Interpretation::new();
        for e in self.elements() {
            if keep(e) {
                let n = r.add_element(self.names[e].clone());
                r.labels[n] = self.labels[e].clone();
                map[e] = Some(n);
            }
        }
        for (d, role, e) in self.edges() {
            if let (Some(a), Some(b)) = (map[d], map[e]) {
                r.add_edge(role, a, b);
            }
        }
        for (ind, &e) in &self.named {
            if let Some(x) = map[e] {
                r.named.insert(ind.clone(), x);
            }
        }
        (r, map)
    }

    /// Renames the element `e` (used to give product roots individual names).
    pub fn rename_element(&mut self, e: Elem, name: impl Into<String>) {
        self.names[e] = name.into();
    }

    /// True if `sub`'s labels and edges (by element index) are contained here.
    pub fn contains_facts_of(&self, sub: &Interpretation) -> bool {
        sub.len() <= self.len()
            && sub.elements().all(|e| sub.labels[e].is_subset(&self.labels[e]))
            && sub.edges().all(|(d, r, e)| self.out[d].contains(&(r.clone(), e)))
    }
}

impl fmt::Display for Interpretation {
    /// `(interp (elem x) (ind a x) (A x) (r x y) ...)`; every element is
    /// declared so the domain and its order round-trip, `ind` lines record
    /// which individual names which element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(interp")?;
        for e in self.elements() {
            write!(f, " (elem {})", self.names[e])?;
        }
        for (a, &e) in &self.named {
            write!(f, " (ind {} {})", a, self.names[e])?;
        }
        for e in self.elements() {
            for a in &self.labels[e] {
                write!(f, " ({} {})", a, self.names[e])?;
            }
        }
        for (d, r, e) in self.edges() {
            write!(f, " ({} {} {})", r, self.names[d], self.names[e])?;
        }
        f.write_str(")")
    }
}

/// An interpretation with a distinguished element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointedInterp {
    pub interp: Interpretation,
    pub point: Elem,
}

impl PointedInterp {
    pub fn new(interp: Interpretation, point: Elem) -> Result<PointedInterp> {
        if point >= interp.len() {
            return Err(Error::Invalid(format!("point {point} outside a domain of size {}", interp.len())));
        }
        Ok(PointedInterp { interp, point })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_neighbors() {
        let mut i = Interpretation::new();
        let a = i.add_element("a");
        let b = i.add_element("b");
        i.add_edge(&Sym::new("r"), a, b);
        i.add_edge(&Sym::new("s"), b, a);
        assert_eq!(i.neighbors(a, &Role::new("r")).collect::<Vec<_>>(), vec![b]);
        assert_eq!(i.neighbors(b, &Role::inv("r")).collect::<Vec<_>>(), vec![a]);
        assert_eq!(i.neighbors(a, &Role::new("s")).count(), 0);
        assert_eq!(i.edge_count(), 2);
    }

    #[test]
    fn disjoint_union_offsets() {
        let mut i = Interpretation::new();
        let x = i.add_individual(&Sym::new("x"));
        i.add_label(x, &Sym::new("A"));
        let mut j = Interpretation::new();
        j.add_individual(&Sym::new("y"));
        let (u, offs) = Interpretation::disjoint_union([&i, &j]).unwrap();
        assert_eq!(offs, vec![0, 1]);
        assert_eq!(u.individual("y"), Some(1));
        assert!(Interpretation::disjoint_union([&i, &i]).is_err());
    }

    #[test]
    fn naming_is_injective() {
        let mut i = Interpretation::new();
        let a = i.add_element("a");
        i.name_individual(&Sym::new("a"), a).unwrap();
        assert!(i.name_individual(&Sym::new("b"), a).is_err());
    }
}

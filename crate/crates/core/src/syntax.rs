//! Concept syntax: symbols, roles, logics, hash-consed concepts, ontologies.
//!
//! Concepts are interned in a process-wide table, so two structurally equal
//! concepts are the same allocation. Equality is an id comparison and the
//! hash is cached per node; this keeps deep characteristic concepts (which
//! are DAGs with heavy sharing) cheap to compare, hash and memoize.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::interp::{PointedInterp, Signature};

/// An interned-by-value name for concepts, roles and individuals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(s: &str) -> Sym {
        Sym(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Sym {
        Sym::new(s)
    }
}

impl From<String> for Sym {
    fn from(s: String) -> Sym {
        Sym(Arc::from(s))
    }
}

impl std::borrow::Borrow<str> for Sym {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// A role name or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Role {
    pub name: Sym,
    pub inverted: bool,
}

impl Role {
    pub fn new(name: impl Into<Sym>) -> Role {
        Role { name: name.into(), inverted: false }
    }

    pub fn inv(name: impl Into<Sym>) -> Role {
        Role { name: name.into(), inverted: true }
    }

    pub fn inverse(&self) -> Role {
        Role { name: self.name.clone(), inverted: !self.inverted }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "(inv {})", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// EL or ELI, the part of a logic that determines the simulation notion.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Base {
    El,
    Eli,
}

impl Base {
    pub fn tag(self) -> &'static str {
        match self {
            Base::El => "el",
            Base::Eli => "eli",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Logic {
    pub base: Base,
    /// ⊥ is available; simulations must then be total.
    pub bottom: bool,
}

impl Logic {
    pub const EL: Logic = Logic { base: Base::El, bottom: false };
    pub const EL_BOT: Logic = Logic { base: Base::El, bottom: true };
    pub const ELI: Logic = Logic { base: Base::Eli, bottom: false };
    pub const ELI_BOT: Logic = Logic { base: Base::Eli, bottom: true };

    pub fn tag(self) -> &'static str {
        match (self.base, self.bottom) {
            (Base::El, false) => "el",
            (Base::El, true) => "elb",
            (Base::Eli, false) => "eli",
            (Base::Eli, true) => "elib",
        }
    }

    pub fn parse(tag: &str) -> Option<Logic> {
        match tag {
            "el" => Some(Logic::EL),
            "elb" => Some(Logic::EL_BOT),
            "eli" => Some(Logic::ELI),
            "elib" => Some(Logic::ELI_BOT),
            _ => None,
        }
    }

    /// The same logic without ⊥.
    pub fn without_bottom(self) -> Logic {
        Logic { base: self.base, bottom: false }
    }

    pub fn has_inverses(self) -> bool {
        self.base == Base::Eli
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// ∃^sim_L(I, d): holds at elements that L-simulate the pointed interpretation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SimQuant {
    pub base: Base,
    pub target: Arc<PointedInterp>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ConceptKind {
    Top,
    Bot,
    Atom(Sym),
    /// Flattened, sorted, duplicate-free, at least two conjuncts.
    And(Vec<Concept>),
    Exists(Role, Concept),
    Sim(SimQuant),
}

struct Node {
    id: u64,
    hash: u64,
    depth: usize,
    tree_size: u64,
    kind: ConceptKind,
}

/// A hash-consed concept. Cloning is a reference-count bump.
#[derive(Clone)]
pub struct Concept(Arc<Node>);

fn table() -> &'static Mutex<HashMap<ConceptKind, Concept>> {
    static TABLE: OnceLock<Mutex<HashMap<ConceptKind, Concept>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

fn tag_of(kind: &ConceptKind) -> u8 {
    match kind {
        ConceptKind::Top => 0,
        ConceptKind::Bot => 1,
        ConceptKind::Atom(_) => 2,
        ConceptKind::Exists(..) => 3,
        ConceptKind::And(_) => 4,
        ConceptKind::Sim(_) => 5,
    }
}

fn intern(kind: ConceptKind) -> Concept {
    let mut t = table().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(c) = t.get(&kind) {
        return c.clone();
    }
    // DefaultHasher::new() uses fixed keys, so hashes (and thus the
    // canonical order below) are stable across runs.
    let mut h = DefaultHasher::new();
    tag_of(&kind).hash(&mut h);
    let (depth, tree_size) = match &kind {
        ConceptKind::Top | ConceptKind::Bot => (0, 1),
        ConceptKind::Atom(a) => {
            a.hash(&mut h);
            (0, 1)
        }
        ConceptKind::And(cs) => {
            for c in cs {
                c.0.hash.hash(&mut h);
            }
            let d = cs.iter().map(|c| c.0.depth).max().unwrap_or(0);
            let s = cs.iter().fold(1u64, |acc, c| acc.saturating_add(c.0.tree_size));
            (d, s)
        }
        ConceptKind::Exists(r, c) => {
            r.hash(&mut h);
            c.0.hash.hash(&mut h);
            (c.0.depth + 1, c.0.tree_size.saturating_add(1))
        }
        ConceptKind::Sim(s) => {
            s.hash(&mut h);
            (0, 1)
        }
    };
    let node = Node {
        id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
        hash: h.finish(),
        depth,
        tree_size,
        kind: kind.clone(),
    };
    let c = Concept(Arc::new(node));
    t.insert(kind, c.clone());
    c
}

impl Concept {
    pub fn top() -> Concept {
        intern(ConceptKind::Top)
    }

    pub fn bot() -> Concept {
        intern(ConceptKind::Bot)
    }

    pub fn atom(name: impl Into<Sym>) -> Concept {
        intern(ConceptKind::Atom(name.into()))
    }

    pub fn exists(role: Role, filler: Concept) -> Concept {
        intern(ConceptKind::Exists(role, filler))
    }

    pub fn some(role: &str, filler: Concept) -> Concept {
        Concept::exists(Role::new(role), filler)
    }

    pub fn sim(base: Base, target: PointedInterp) -> Concept {
        intern(ConceptKind::Sim(SimQuant { base, target: Arc::new(target) }))
    }

    /// Conjunction in canonical form: nested conjunctions flattened, ⊤
    /// dropped, ⊥ absorbing, conjuncts sorted and deduplicated.
    pub fn and<I: IntoIterator<Item = Concept>>(parts: I) -> Concept {
        let mut flat: Vec<Concept> = Vec::new();
        for p in parts {
            match p.kind() {
                ConceptKind::Top => {}
                ConceptKind::Bot => return Concept::bot(),
                ConceptKind::And(cs) => flat.extend(cs.iter().cloned()),
                _ => flat.push(p),
            }
        }
        flat.sort();
        flat.dedup();
        match flat.len() {
            0 => Concept::top(),
            1 => flat.pop().expect("one conjunct"),
            _ => intern(ConceptKind::And(flat)),
        }
    }

    pub fn and2(a: Concept, b: Concept) -> Concept {
        Concept::and([a, b])
    }

    pub fn kind(&self) -> &ConceptKind {
        &self.0.kind
    }

    /// Process-unique identifier; equal concepts share it.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Maximal nesting of existential restrictions.
    pub fn role_depth(&self) -> usize {
        self.0.depth
    }

    /// Size of the concept written out as a tree (saturating).
    pub fn tree_size(&self) -> u64 {
        self.0.tree_size
    }

    pub fn is_top(&self) -> bool {
        matches!(self.kind(), ConceptKind::Top)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.kind(), ConceptKind::Bot)
    }

    /// Top-level conjuncts (a non-conjunction is its own single conjunct,
    /// ⊤ has none).
    pub fn conjuncts(&self) -> Vec<Concept> {
        match self.kind() {
            ConceptKind::Top => Vec::new(),
            ConceptKind::And(cs) => cs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Visits every distinct subconcept once, children before parents.
    pub fn for_each_subconcept(&self, f: &mut dyn FnMut(&Concept)) {
        for c in self.postorder() {
            f(&c);
        }
    }

    /// Distinct subconcepts, children before parents. Iterative, so deep
    /// characteristic concepts do not exhaust the stack.
    pub fn postorder(&self) -> Vec<Concept> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<(Concept, bool)> = vec![(self.clone(), false)];
        while let Some((c, expanded)) = stack.pop() {
            if expanded {
                out.push(c);
                continue;
            }
            if !seen.insert(c.id()) {
                continue;
            }
            stack.push((c.clone(), true));
            match c.kind() {
                ConceptKind::And(cs) => {
                    for x in cs.iter().rev() {
                        if !seen.contains(&x.id()) {
                            stack.push((x.clone(), false));
                        }
                    }
                }
                ConceptKind::Exists(_, x) => {
                    if !seen.contains(&x.id()) {
                        stack.push((x.clone(), false));
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Concept and role names occurring in the concept, including inside
    /// simulation-quantifier payloads.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        self.for_each_subconcept(&mut |c| match c.kind() {
            ConceptKind::Atom(a) => {
                sig.concepts.insert(a.clone());
            }
            ConceptKind::Exists(r, _) => {
                sig.roles.insert(r.name.clone());
            }
            ConceptKind::Sim(s) => sig.extend(&s.target.interp.signature()),
            _ => {}
        });
        sig
    }

    /// Checks that the concept belongs to `logic` (optionally extended with
    /// simulation quantifiers of the ⊥-free base).
    pub fn check_logic(&self, logic: Logic) -> Result<()> {
        let mut err = None;
        self.for_each_subconcept(&mut |c| {
            if err.is_some() {
                return;
            }
            match c.kind() {
                ConceptKind::Bot if !logic.bottom => {
                    err = Some(format!("bot not allowed in {}", logic.tag()))
                }
                ConceptKind::Exists(r, _) if r.inverted && !logic.has_inverses() => {
                    err = Some(format!("inverse role not allowed in {}", logic.tag().to_uppercase()))
                }
                ConceptKind::Sim(s) if s.base == Base::Eli && !logic.has_inverses() => {
                    err = Some(format!("ELI simulation quantifier not allowed in {}", logic.tag()))
                }
                _ => {}
            }
        });
        match err {
            Some(e) => Err(Error::Logic(e)),
            None => Ok(()),
        }
    }

    pub fn has_inverse(&self) -> bool {
        let mut found = false;
        self.for_each_subconcept(&mut |c| match c.kind() {
            ConceptKind::Exists(r, _) if r.inverted => found = true,
            ConceptKind::Sim(s) if s.base == Base::Eli => found = true,
            _ => {}
        });
        found
    }

    pub fn has_sim(&self) -> bool {
        let mut found = false;
        self.for_each_subconcept(&mut |c| {
            if matches!(c.kind(), ConceptKind::Sim(_)) {
                found = true;
            }
        });
        found
    }

    pub fn has_bot(&self) -> bool {
        let mut found = false;
        self.for_each_subconcept(&mut |c| {
            if c.is_bot() {
                found = true;
            }
        });
        found
    }
}

impl PartialEq for Concept {
    fn eq(&self, other: &Concept) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Concept {}

impl Hash for Concept {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Concept {
    /// Canonical order: by constructor, then atom/role name, then structural
    /// hash. Ties beyond that only occur on hash collisions.
    fn cmp(&self, other: &Concept) -> std::cmp::Ordering {
        if self.0.id == other.0.id {
            return std::cmp::Ordering::Equal;
        }
        let key = |c: &Concept| -> (u8, Option<Sym>, bool) {
            match c.kind() {
                ConceptKind::Atom(a) => (2, Some(a.clone()), false),
                ConceptKind::Exists(r, _) => (3, Some(r.name.clone()), r.inverted),
                k => (tag_of(k), None, false),
            }
        };
        key(self)
            .cmp(&key(other))
            .then(self.0.hash.cmp(&other.0.hash))
            .then(self.0.id.cmp(&other.0.id))
    }
}

impl PartialOrd for Concept {
    fn partial_cmp(&self, other: &Concept) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ConceptKind::Top => f.write_str("top"),
            ConceptKind::Bot => f.write_str("bot"),
            ConceptKind::Atom(a) => write!(f, "{a}"),
            ConceptKind::And(cs) => {
                f.write_str("(and")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
            ConceptKind::Exists(r, c) => write!(f, "(some {r} {c})"),
            ConceptKind::Sim(s) => {
                let p = &s.target;
                write!(f, "(sim {} {} {})", s.base.tag(), p.interp, p.interp.element_name(p.point))
            }
        }
    }
}

impl fmt::Debug for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A concept inclusion `lhs ⊑ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ci {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Ci {
    pub fn new(lhs: Concept, rhs: Concept) -> Ci {
        Ci { lhs, rhs }
    }
}

impl fmt::Display for Ci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sub {} {})", self.lhs, self.rhs)
    }
}

/// A finite set of CIs kept in canonical (sorted, deduplicated) order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ontology {
    cis: Vec<Ci>,
}

impl Ontology {
    pub fn new<I: IntoIterator<Item = Ci>>(cis: I) -> Ontology {
        let mut cis: Vec<Ci> = cis.into_iter().collect();
        cis.sort();
        cis.dedup();
        Ontology { cis }
    }

    pub fn empty() -> Ontology {
        Ontology::default()
    }

    pub fn cis(&self) -> &[Ci] {
        &self.cis
    }

    pub fn len(&self) -> usize {
        self.cis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cis.is_empty()
    }

    pub fn union<'a, I: IntoIterator<Item = &'a Ontology>>(parts: I) -> Ontology {
        Ontology::new(parts.into_iter().flat_map(|o| o.cis.iter().cloned()))
    }

    pub fn with(&self, ci: Ci) -> Ontology {
        Ontology::new(self.cis.iter().cloned().chain(std::iter::once(ci)))
    }

    pub fn without(&self, index: usize) -> Ontology {
        Ontology::new(self.cis.iter().enumerate().filter(|(i, _)| *i != index).map(|(_, c)| c.clone()))
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for ci in &self.cis {
            sig.extend(&ci.lhs.signature());
            sig.extend(&ci.rhs.signature());
        }
        sig
    }

    pub fn check_logic(&self, logic: Logic) -> Result<()> {
        for ci in &self.cis {
            ci.lhs.check_logic(logic)?;
            ci.rhs.check_logic(logic)?;
        }
        Ok(())
    }

    /// True if some concept uses an inverse role or an ELI simulation
    /// quantifier, i.e. the EL chase does not apply.
    pub fn needs_eli(&self) -> bool {
        self.cis.iter().any(|ci| ci.lhs.has_inverse() || ci.rhs.has_inverse())
    }

    /// Names of all symbols, for freshness checks.
    pub fn symbol_names(&self) -> BTreeSet<Sym> {
        let s = self.signature();
        s.concepts.into_iter().chain(s.roles).collect()
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ci in &self.cis {
            writeln!(f, "{ci}")?;
        }
        Ok(())
    }
}

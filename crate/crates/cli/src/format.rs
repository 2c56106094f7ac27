//! Instance, ABox, ontology and concept files.
//!
//! The text format is s-expressions:
//!
//! ```text
//! (logic el)
//! (query-lang cq)
//! (signature (concepts Emp) (roles mentor))      ; optional
//! (positive
//!   (abox
//!     (NewHire jane))
//!   (query (cq (mentor jane ?x) (Emp ?x))))
//! (negative ...)
//! ```
//!
//! A query is a list of disjuncts: `(cq atom ...)`, `(rooted C a)`,
//! `(exists C)`, or bare atoms forming one conjunctive query. Variables
//! start with `?`. Concepts are `top`, `bot`, names, `(and C ...)`,
//! `(some r C)`, `(some (inv r) C)` and `(sim el|eli (interp ...) elem)`.
//! Files ending in `.json` use the same trees with lists as arrays and
//! atoms as strings.

use std::fmt;

use hornfit::{
    ABox, Assertion, Base, Ci, Concept, ConceptKind, Cq, Example, ExampleCollection, Interpretation, Logic, Ontology,
    PointedInterp, QAtom, QueryLang, Role, Signature, Sym, Term, Ucq, RESERVED_PREFIX,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::sexp::{self, Pos, Sexp};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ErrorKind {
    Syntax,
    UnknownLogic,
    UnknownQueryLang,
    ReservedPrefix,
    QueryIndividualNotInAbox,
    EmptyAbox,
    Logic,
    Invalid,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormatError {
    pub kind: ErrorKind,
    /// Absent for JSON input, whose structural errors come from serde.
    pub pos: Option<Pos>,
    pub msg: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "{p}: {}", self.msg),
            None => f.write_str(&self.msg),
        }
    }
}

impl std::error::Error for FormatError {}

type Result<T> = std::result::Result<T, FormatError>;

fn fail<T>(kind: ErrorKind, pos: Pos, msg: impl Into<String>) -> Result<T> {
    Err(FormatError { kind, pos: Some(pos), msg: msg.into() })
}

fn syntax<T>(pos: Pos, msg: impl Into<String>) -> Result<T> {
    fail(ErrorKind::Syntax, pos, msg)
}

impl From<sexp::SyntaxError> for FormatError {
    fn from(e: sexp::SyntaxError) -> FormatError {
        FormatError { kind: ErrorKind::Syntax, pos: Some(e.pos), msg: e.msg }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Text,
    Json,
}

impl Flavor {
    pub fn of_path(path: &str) -> Flavor {
        if path.ends_with(".json") {
            Flavor::Json
        } else {
            Flavor::Text
        }
    }
}

// ---------------------------------------------------------------------------
// Reading

fn logic_name(l: Logic) -> &'static str {
    match l.tag() {
        "el" => "EL",
        "elb" => "EL⊥",
        "eli" => "ELI",
        _ => "ELI⊥",
    }
}

struct Ctx {
    logic: Option<Logic>,
    /// Reject user symbols with the reserved prefix.
    strict: bool,
}

impl Ctx {
    fn name(&self, x: &Sexp, what: &str) -> Result<Sym> {
        let Some(s) = x.atom() else { return syntax(x.pos(), format!("expected {what}, found a list")) };
        if s.is_empty() {
            return syntax(x.pos(), format!("empty {what}"));
        }
        if self.strict && s.trim_start_matches('?').starts_with(RESERVED_PREFIX) {
            return fail(ErrorKind::ReservedPrefix, x.pos(), format!("{what} `{s}` uses the reserved prefix `{RESERVED_PREFIX}`"));
        }
        Ok(Sym::new(s))
    }

    fn role(&self, x: &Sexp) -> Result<Role> {
        if let Some(xs) = x.list() {
            if x.head() != Some("inv") || xs.len() != 2 {
                return syntax(x.pos(), "expected a role name or `(inv r)`");
            }
            if let Some(l) = self.logic {
                if !l.has_inverses() {
                    return fail(ErrorKind::Logic, x.pos(), format!("inverse role not allowed in {}", logic_name(l)));
                }
            }
            return Ok(Role::inv(self.name(&xs[1], "role name")?));
        }
        Ok(Role::new(self.name(x, "role name")?))
    }

    fn concept(&self, x: &Sexp) -> Result<Concept> {
        if let Some(s) = x.atom() {
            return match s {
                "top" => Ok(Concept::top()),
                "bot" => {
                    if let Some(l) = self.logic.filter(|l| !l.bottom) {
                        return fail(ErrorKind::Logic, x.pos(), format!("bot not allowed in {}", logic_name(l)));
                    }
                    Ok(Concept::bot())
                }
                _ => Ok(Concept::atom(self.name(x, "concept name")?)),
            };
        }
        let xs = x.list().expect("not an atom");
        match x.head() {
            Some("and") => Ok(Concept::and(xs[1..].iter().map(|c| self.concept(c)).collect::<Result<Vec<_>>>()?)),
            Some("some") if xs.len() == 3 => Ok(Concept::exists(self.role(&xs[1])?, self.concept(&xs[2])?)),
            Some("some") => syntax(x.pos(), "`some` takes a role and a concept"),
            Some("sim") if xs.len() == 4 => {
                let base = match xs[1].atom() {
                    Some("el") => Base::El,
                    Some("eli") => {
                        if let Some(l) = self.logic.filter(|l| !l.has_inverses()) {
                            return fail(ErrorKind::Logic, xs[1].pos(), format!("ELI simulation quantifier not allowed in {}", logic_name(l)));
                        }
                        Base::Eli
                    }
                    _ => return syntax(xs[1].pos(), "simulation base must be `el` or `eli`"),
                };
                let i = self.interp(&xs[2])?;
                let Some(point) = xs[3].atom().and_then(|n| i.element_by_name(n)) else {
                    return syntax(xs[3].pos(), "point is not an element of the interpretation");
                };
                Ok(Concept::sim(base, PointedInterp::new(i, point).expect("point in domain")))
            }
            Some("sim") => syntax(x.pos(), "`sim` takes a base, an interpretation and an element"),
            _ => syntax(x.pos(), "expected a concept"),
        }
    }

    /// `(interp (elem x) (ind a x) (A x) (r x y) ...)`. Elements used but
    /// not declared are added in order of first use.
    fn interp(&self, x: &Sexp) -> Result<Interpretation> {
        let Some(items) = x.list().filter(|_| x.head() == Some("interp")) else {
            return syntax(x.pos(), "expected `(interp ...)`");
        };
        let mut i = Interpretation::new();
        let elem = |i: &mut Interpretation, x: &Sexp| -> Result<usize> {
            let Some(n) = x.atom() else { return syntax(x.pos(), "expected an element name") };
            Ok(i.element_by_name(n).unwrap_or_else(|| i.add_element(n)))
        };
        for it in &items[1..] {
            let Some(xs) = it.list().filter(|xs| !xs.is_empty()) else { return syntax(it.pos(), "expected an interpretation fact") };
            match (it.head(), xs.len()) {
                (Some("elem"), 2) => {
                    elem(&mut i, &xs[1])?;
                }
                (Some("ind"), 3) => {
                    let a = self.name(&xs[1], "individual")?;
                    let e = elem(&mut i, &xs[2])?;
                    if let Err(err) = i.name_individual(&a, e) {
                        return fail(ErrorKind::Invalid, it.pos(), err.to_string());
                    }
                }
                (Some(_), 2) => {
                    let a = self.name(&xs[0], "concept name")?;
                    let e = elem(&mut i, &xs[1])?;
                    i.add_label(e, &a);
                }
                (Some(_), 3) => {
                    let r = self.name(&xs[0], "role name")?;
                    let d = elem(&mut i, &xs[1])?;
                    let e = elem(&mut i, &xs[2])?;
                    i.add_edge(&r, d, e);
                }
                _ => return syntax(it.pos(), "expected `(A x)`, `(r x y)`, `(elem x)` or `(ind a x)`"),
            }
        }
        Ok(i)
    }

    fn assertion(&self, x: &Sexp) -> Result<Assertion> {
        match x.list() {
            Some([a, i]) => Ok(Assertion::Concept(self.name(a, "concept name")?, self.individual(i)?)),
            Some([r, i, j]) => Ok(Assertion::Role(self.name(r, "role name")?, self.individual(i)?, self.individual(j)?)),
            _ => syntax(x.pos(), "expected an assertion `(A a)` or `(r a b)`"),
        }
    }

    fn individual(&self, x: &Sexp) -> Result<Sym> {
        if x.atom().is_some_and(|s| s.starts_with('?')) {
            return syntax(x.pos(), "variables are not allowed in an ABox");
        }
        self.name(x, "individual")
    }

    fn term(&self, x: &Sexp) -> Result<Term> {
        let s = self.name(x, "term")?;
        Ok(match s.as_str().strip_prefix('?') {
            Some("") => return syntax(x.pos(), "empty variable name"),
            Some(v) => Term::var(v),
            None => Term::Ind(s),
        })
    }

    fn qatom(&self, x: &Sexp) -> Result<QAtom> {
        match x.list() {
            Some([a, t]) => Ok(QAtom::Concept(self.name(a, "concept name")?, self.term(t)?)),
            Some([r, s, t]) => Ok(QAtom::Role(self.name(r, "role name")?, self.term(s)?, self.term(t)?)),
            _ => syntax(x.pos(), "expected a query atom `(A t)` or `(r s t)`"),
        }
    }

    fn query(&self, x: &Sexp) -> Result<Ucq> {
        let xs = x.list().expect("checked by caller");
        let mut cqs = Vec::new();
        let mut loose = Vec::new();
        for d in &xs[1..] {
            match d.head() {
                Some("cq") => {
                    let atoms = d.list().unwrap()[1..].iter().map(|a| self.qatom(a)).collect::<Result<Vec<_>>>()?;
                    match Cq::new(atoms) {
                        Ok(c) => cqs.push(c),
                        Err(e) => return fail(ErrorKind::Invalid, d.pos(), e.to_string()),
                    }
                }
                Some("rooted") | Some("exists") => cqs.push(self.concept_query(d)?),
                _ => loose.push(self.qatom(d)?),
            }
        }
        if !loose.is_empty() {
            cqs.push(Cq::new(loose).expect("nonempty"));
        }
        match Ucq::new(cqs) {
            Ok(q) => Ok(q),
            Err(_) => fail(ErrorKind::Invalid, x.pos(), "empty query"),
        }
    }

    /// `(rooted C a)` or `(exists C)` as the tree-shaped CQ of `C`.
    fn concept_query(&self, x: &Sexp) -> Result<Cq> {
        let xs = x.list().unwrap();
        let (c, root) = match (x.head(), xs.len()) {
            (Some("rooted"), 3) => (self.concept(&xs[1])?, Term::Ind(self.individual(&xs[2])?)),
            (Some("exists"), 2) => (self.concept(&xs[1])?, Term::var("v0")),
            _ => return syntax(x.pos(), "expected `(rooted C a)` or `(exists C)`"),
        };
        let mut atoms = Vec::new();
        let mut next = 1;
        if let Err(msg) = concept_atoms(&c, &root, &mut next, &mut atoms) {
            return fail(ErrorKind::Invalid, x.pos(), msg);
        }
        match Cq::new(atoms) {
            Ok(q) => Ok(q),
            Err(_) => fail(ErrorKind::Invalid, x.pos(), "concept `top` gives an empty query"),
        }
    }
}

fn concept_atoms(c: &Concept, t: &Term, next: &mut usize, out: &mut Vec<QAtom>) -> std::result::Result<(), String> {
    match c.kind() {
        ConceptKind::Top => {}
        ConceptKind::Atom(a) => out.push(QAtom::Concept(a.clone(), t.clone())),
        ConceptKind::And(cs) => {
            for d in cs {
                concept_atoms(d, t, next, out)?;
            }
        }
        ConceptKind::Exists(r, d) => {
            let y = Term::var(&format!("v{next}"));
            *next += 1;
            out.push(if r.inverted {
                QAtom::Role(r.name.clone(), y.clone(), t.clone())
            } else {
                QAtom::Role(r.name.clone(), t.clone(), y.clone())
            });
            concept_atoms(d, &y, next, out)?;
        }
        ConceptKind::Bot | ConceptKind::Sim(_) => return Err(format!("`{c}` is not expressible as a conjunctive query")),
    }
    Ok(())
}

fn read(text: &str, flavor: Flavor, json_to_forms: fn(Value) -> Result<Vec<Sexp>>) -> Result<Vec<Sexp>> {
    match flavor {
        Flavor::Text => Ok(sexp::read_all(text)?),
        Flavor::Json => {
            let v: Value = serde_json::from_str(text).map_err(|e| FormatError {
                kind: ErrorKind::Syntax,
                pos: Some(Pos { line: e.line(), col: e.column() }),
                msg: e.to_string(),
            })?;
            json_to_forms(v)
        }
    }
}

fn start() -> Pos {
    Pos { line: 1, col: 1 }
}

pub fn parse_instance(text: &str) -> Result<ExampleCollection> {
    parse_instance_as(text, Flavor::Text)
}

pub fn parse_instance_as(text: &str, flavor: Flavor) -> Result<ExampleCollection> {
    let forms = read(text, flavor, instance_json_to_forms)?;
    let mut logic = None;
    let mut lang = None;
    let mut declared = Signature::default();
    let mut examples: Vec<(bool, &Sexp)> = Vec::new();
    let tag = |xs: &[Sexp], x: &Sexp| -> Result<(String, Pos)> {
        match xs {
            [_, t] if t.atom().is_some() => Ok((t.atom().unwrap().to_string(), t.pos())),
            _ => syntax(x.pos(), "expected a single tag"),
        }
    };
    for x in &forms {
        let Some(xs) = x.list() else { return syntax(x.pos(), "expected a top-level form") };
        match x.head() {
            Some("logic") => {
                let (t, p) = tag(xs, x)?;
                match Logic::parse(&t) {
                    Some(l) => logic = Some(l),
                    None => return fail(ErrorKind::UnknownLogic, p, format!("unknown logic tag `{t}` (expected el, elb, eli or elib)")),
                }
            }
            Some("query-lang") => {
                let (t, p) = tag(xs, x)?;
                match QueryLang::parse(&t) {
                    Some(l) => lang = Some(l),
                    None => {
                        return fail(ErrorKind::UnknownQueryLang, p, format!("unknown query language `{t}` (expected consistency, aq, cq or ucq)"))
                    }
                }
            }
            Some("signature") => {
                let ctx = Ctx { logic: None, strict: true };
                for part in &xs[1..] {
                    let names = part.list().map(|ys| &ys[1..]).unwrap_or(&[]);
                    let set = match part.head() {
                        Some("concepts") => &mut declared.concepts,
                        Some("roles") => &mut declared.roles,
                        _ => return syntax(part.pos(), "expected `(concepts ...)` or `(roles ...)`"),
                    };
                    for n in names {
                        set.insert(ctx.name(n, "symbol")?);
                    }
                }
            }
            Some("positive") => examples.push((true, x)),
            Some("negative") => examples.push((false, x)),
            _ => return syntax(x.pos(), "expected `logic`, `query-lang`, `signature`, `positive` or `negative`"),
        }
    }
    let Some(logic) = logic else { return fail(ErrorKind::Invalid, start(), "missing `(logic ...)`") };
    let Some(lang) = lang else { return fail(ErrorKind::Invalid, start(), "missing `(query-lang ...)`") };
    let ctx = Ctx { logic: Some(logic), strict: true };
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (positive, x) in examples {
        let ex = example(&ctx, lang, x)?;
        if positive {
            pos.push(ex);
        } else {
            neg.push(ex);
        }
    }
    let mut e = match ExampleCollection::new(pos, neg, logic, lang) {
        Ok(e) => e,
        Err(err) => return fail(ErrorKind::Invalid, start(), err.to_string()),
    };
    e.declared = declared;
    Ok(e)
}

fn example(ctx: &Ctx, lang: QueryLang, x: &Sexp) -> Result<Example> {
    let xs = &x.list().unwrap()[1..];
    let mut abox = None;
    let mut query = None;
    for part in xs {
        match part.head() {
            Some("abox") if abox.is_none() => {
                let items = &part.list().unwrap()[1..];
                if items.is_empty() {
                    return fail(ErrorKind::EmptyAbox, part.pos(), "empty ABox");
                }
                let asserts = items.iter().map(|a| ctx.assertion(a)).collect::<Result<Vec<_>>>()?;
                abox = Some(ABox::new(asserts).expect("nonempty"));
            }
            Some("query") if query.is_none() => query = Some((ctx.query(part)?, part.pos())),
            _ => return syntax(part.pos(), "expected one `(abox ...)` and at most one `(query ...)`"),
        }
    }
    let Some(abox) = abox else { return fail(ErrorKind::EmptyAbox, x.pos(), "example without an ABox") };
    match (lang, query) {
        (QueryLang::Consistency, None) => Ok(Example::consistency(abox)),
        (QueryLang::Consistency, Some((_, p))) => fail(ErrorKind::Invalid, p, "consistency mode takes no query"),
        (_, None) => fail(ErrorKind::Invalid, x.pos(), format!("missing query (query language {})", lang.tag())),
        (_, Some((q, p))) => {
            let inds = abox.individuals();
            if let Some(a) = q.individuals().into_iter().find(|a| !inds.contains(a)) {
                return fail(ErrorKind::QueryIndividualNotInAbox, p, format!("query individual `{a}` does not occur in its ABox"));
            }
            match lang {
                QueryLang::Aq if q.as_aq().is_none() => fail(ErrorKind::Invalid, p, "query is not an atomic query `(A a)`"),
                QueryLang::Cq if q.cqs().len() != 1 => fail(ErrorKind::Invalid, p, "union given where a single CQ is expected"),
                _ => Ok(Example::new(abox, Some(q)).expect("checked above")),
            }
        }
    }
}

/// Parses an ontology; with `logic`, constructs outside it are rejected.
/// Reserved names are allowed, synthesized ontologies use them.
pub fn parse_ontology(text: &str, logic: Option<Logic>) -> Result<Ontology> {
    parse_ontology_as(text, logic, Flavor::Text)
}

pub fn parse_ontology_as(text: &str, logic: Option<Logic>, flavor: Flavor) -> Result<Ontology> {
    let ctx = Ctx { logic, strict: false };
    let mut cis = Vec::new();
    for x in read(text, flavor, list_json_to_forms)? {
        match x.list() {
            Some([_, l, r]) if x.head() == Some("sub") => cis.push(Ci::new(ctx.concept(l)?, ctx.concept(r)?)),
            _ => return syntax(x.pos(), "expected `(sub C D)`"),
        }
    }
    Ok(Ontology::new(cis))
}

pub fn parse_concept(text: &str, logic: Option<Logic>) -> Result<Concept> {
    match &sexp::read_all(text)?[..] {
        [x] => Ctx { logic, strict: false }.concept(x),
        [] => syntax(start(), "expected a concept"),
        [_, y, ..] => syntax(y.pos(), "trailing input after the concept"),
    }
}

pub fn parse_abox(text: &str) -> Result<ABox> {
    parse_abox_as(text, Flavor::Text)
}

pub fn parse_abox_as(text: &str, flavor: Flavor) -> Result<ABox> {
    let ctx = Ctx { logic: None, strict: true };
    let forms = read(text, flavor, list_json_to_forms)?;
    if forms.is_empty() {
        return fail(ErrorKind::EmptyAbox, start(), "empty ABox");
    }
    let asserts = forms.iter().map(|a| ctx.assertion(a)).collect::<Result<Vec<_>>>()?;
    Ok(ABox::new(asserts).expect("nonempty"))
}

/// A single query in the `(query ...)` syntax, for `entail`.
pub fn parse_query(text: &str) -> Result<Ucq> {
    let forms = sexp::read_all(text)?;
    let ctx = Ctx { logic: None, strict: true };
    match &forms[..] {
        [x] if x.head() == Some("query") => ctx.query(x),
        [x] => syntax(x.pos(), "expected `(query ...)`"),
        _ => syntax(start(), "expected exactly one `(query ...)`"),
    }
}

// ---------------------------------------------------------------------------
// JSON mirror

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    logic: String,
    query_lang: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signature: Option<SignatureJson>,
    #[serde(default)]
    positives: Vec<ExampleJson>,
    #[serde(default)]
    negatives: Vec<ExampleJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureJson {
    #[serde(default)]
    concepts: Vec<String>,
    #[serde(default)]
    roles: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExampleJson {
    abox: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    query: Option<Vec<Value>>,
}

fn json_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError { kind: ErrorKind::Syntax, pos: None, msg: msg.into() })
}

fn json_to_sexp(v: &Value) -> Result<Sexp> {
    let p = Pos { line: 0, col: 0 };
    match v {
        Value::String(s) => Ok(Sexp::Atom(s.clone(), p)),
        Value::Array(xs) => Ok(Sexp::List(xs.iter().map(json_to_sexp).collect::<Result<_>>()?, p)),
        other => json_err(format!("expected a string or an array, found {other}")),
    }
}

fn sexp_to_json(x: &Sexp) -> Value {
    match x {
        Sexp::Atom(s, _) => Value::String(s.clone()),
        Sexp::List(xs, _) => Value::Array(xs.iter().map(sexp_to_json).collect()),
    }
}

fn list(head: &str, rest: Vec<Sexp>) -> Sexp {
    let p = Pos { line: 0, col: 0 };
    let mut xs = vec![Sexp::Atom(head.to_string(), p)];
    xs.extend(rest);
    Sexp::List(xs, p)
}

fn leaf(s: &str) -> Sexp {
    Sexp::Atom(s.to_string(), Pos { line: 0, col: 0 })
}

fn instance_json_to_forms(v: Value) -> Result<Vec<Sexp>> {
    let j: InstanceJson = match serde_json::from_value(v) {
        Ok(j) => j,
        Err(e) => return json_err(format!("instance: {e}")),
    };
    let mut forms = vec![list("logic", vec![leaf(&j.logic)]), list("query-lang", vec![leaf(&j.query_lang)])];
    if let Some(s) = j.signature {
        forms.push(list(
            "signature",
            vec![
                list("concepts", s.concepts.iter().map(|c| leaf(c)).collect()),
                list("roles", s.roles.iter().map(|r| leaf(r)).collect()),
            ],
        ));
    }
    for (head, exs) in [("positive", j.positives), ("negative", j.negatives)] {
        for ex in exs {
            let mut body = vec![list("abox", ex.abox.iter().map(json_to_sexp).collect::<Result<_>>()?)];
            if let Some(q) = ex.query {
                body.push(list("query", q.iter().map(json_to_sexp).collect::<Result<_>>()?));
            }
            forms.push(list(head, body));
        }
    }
    Ok(forms)
}

fn list_json_to_forms(v: Value) -> Result<Vec<Sexp>> {
    match v {
        Value::Array(xs) => xs.iter().map(json_to_sexp).collect(),
        _ => json_err("expected a top-level array"),
    }
}

// ---------------------------------------------------------------------------
// Writing

fn sym(s: &Sym) -> Sexp {
    leaf(s.as_str())
}

fn term_sexp(t: &Term) -> Sexp {
    match t {
        Term::Var(x) => leaf(&format!("?{x}")),
        Term::Ind(a) => sym(a),
    }
}

fn assertion_sexp(a: &Assertion) -> Sexp {
    match a {
        Assertion::Concept(c, x) => Sexp::List(vec![sym(c), sym(x)], Pos { line: 0, col: 0 }),
        Assertion::Role(r, x, y) => Sexp::List(vec![sym(r), sym(x), sym(y)], Pos { line: 0, col: 0 }),
    }
}

fn qatom_sexp(a: &QAtom) -> Sexp {
    match a {
        QAtom::Concept(c, t) => Sexp::List(vec![sym(c), term_sexp(t)], Pos { line: 0, col: 0 }),
        QAtom::Role(r, s, t) => Sexp::List(vec![sym(r), term_sexp(s), term_sexp(t)], Pos { line: 0, col: 0 }),
    }
}

fn cq_sexp(c: &Cq) -> Sexp {
    list("cq", c.atoms().iter().map(qatom_sexp).collect())
}

fn role_sexp(r: &Role) -> Sexp {
    if r.inverted {
        list("inv", vec![sym(&r.name)])
    } else {
        sym(&r.name)
    }
}

pub fn interp_sexp(i: &Interpretation) -> Sexp {
    let p = Pos { line: 0, col: 0 };
    let name = |e: usize| leaf(i.element_name(e));
    let mut xs: Vec<Sexp> = i.elements().map(|e| list("elem", vec![name(e)])).collect();
    for (a, &e) in i.named() {
        xs.push(list("ind", vec![sym(a), name(e)]));
    }
    for e in i.elements() {
        for a in i.labels(e) {
            xs.push(Sexp::List(vec![sym(a), name(e)], p));
        }
    }
    for (d, r, e) in i.edges() {
        xs.push(Sexp::List(vec![sym(r), name(d), name(e)], p));
    }
    list("interp", xs)
}

pub fn concept_sexp(c: &Concept) -> Sexp {
    match c.kind() {
        ConceptKind::Top => leaf("top"),
        ConceptKind::Bot => leaf("bot"),
        ConceptKind::Atom(a) => sym(a),
        ConceptKind::And(cs) => list("and", cs.iter().map(concept_sexp).collect()),
        ConceptKind::Exists(r, d) => list("some", vec![role_sexp(r), concept_sexp(d)]),
        ConceptKind::Sim(s) => {
            let t = &s.target;
            list("sim", vec![leaf(s.base.tag()), interp_sexp(&t.interp), leaf(t.interp.element_name(t.point))])
        }
    }
}

/// One line, atoms quoted where needed.
pub fn flat(x: &Sexp) -> String {
    let mut out = String::new();
    write_flat(x, &mut out);
    out
}

fn write_flat(x: &Sexp, out: &mut String) {
    match x {
        Sexp::Atom(s, _) => out.push_str(&sexp::atom(s)),
        Sexp::List(xs, _) => {
            out.push('(');
            for (k, y) in xs.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                write_flat(y, out);
            }
            out.push(')');
        }
    }
}

/// Lists headed by `positive`, `negative` and `abox` put each child on its
/// own line; everything else is written flat.
fn write_layout(x: &Sexp, indent: usize, out: &mut String) {
    let broken = matches!(x.head(), Some("positive" | "negative" | "abox"));
    match x.list() {
        Some(xs) if broken => {
            out.push('(');
            out.push_str(&flat(&xs[0]));
            for y in &xs[1..] {
                out.push('\n');
                out.push_str(&" ".repeat(indent + 2));
                write_layout(y, indent + 2, out);
            }
            out.push(')');
        }
        _ => write_flat(x, out),
    }
}

fn instance_forms(e: &ExampleCollection) -> Vec<Sexp> {
    let mut forms = vec![list("logic", vec![leaf(e.logic.tag())]), list("query-lang", vec![leaf(e.lang.tag())])];
    if !e.declared.concepts.is_empty() || !e.declared.roles.is_empty() {
        forms.push(list(
            "signature",
            vec![
                list("concepts", e.declared.concepts.iter().map(sym).collect()),
                list("roles", e.declared.roles.iter().map(sym).collect()),
            ],
        ));
    }
    for (head, exs) in [("positive", &e.positives), ("negative", &e.negatives)] {
        for ex in exs {
            let mut body = vec![list("abox", ex.abox.assertions().iter().map(assertion_sexp).collect())];
            if let Some(q) = &ex.query {
                body.push(list("query", q.cqs().iter().map(cq_sexp).collect()));
            }
            forms.push(list(head, body));
        }
    }
    forms
}

pub fn serialize_instance(e: &ExampleCollection, flavor: Flavor) -> String {
    let forms = instance_forms(e);
    match flavor {
        Flavor::Text => {
            let mut out = String::new();
            for f in &forms {
                write_layout(f, 0, &mut out);
                out.push('\n');
            }
            out
        }
        Flavor::Json => {
            let body = |x: &Sexp| -> ExampleJson {
                let parts = x.list().unwrap();
                let abox = parts[1].list().unwrap()[1..].iter().map(sexp_to_json).collect();
                let query = parts.get(2).map(|q| q.list().unwrap()[1..].iter().map(sexp_to_json).collect());
                ExampleJson { abox, query }
            };
            let has_sig = !e.declared.concepts.is_empty() || !e.declared.roles.is_empty();
            let j = InstanceJson {
                logic: e.logic.tag().to_string(),
                query_lang: e.lang.tag().to_string(),
                signature: has_sig.then(|| SignatureJson {
                    concepts: e.declared.concepts.iter().map(|s| s.to_string()).collect(),
                    roles: e.declared.roles.iter().map(|s| s.to_string()).collect(),
                }),
                positives: forms.iter().filter(|f| f.head() == Some("positive")).map(body).collect(),
                negatives: forms.iter().filter(|f| f.head() == Some("negative")).map(body).collect(),
            };
            serde_json::to_string_pretty(&j).expect("serializable") + "\n"
        }
    }
}

fn ci_sexp(ci: &Ci) -> Sexp {
    list("sub", vec![concept_sexp(&ci.lhs), concept_sexp(&ci.rhs)])
}

/// One CI per line in canonical order.
pub fn serialize_ontology(o: &Ontology, flavor: Flavor) -> String {
    lines_or_json(o.cis().iter().map(ci_sexp).collect(), flavor)
}

pub fn serialize_abox(a: &ABox, flavor: Flavor) -> String {
    lines_or_json(a.assertions().iter().map(assertion_sexp).collect(), flavor)
}

fn lines_or_json(forms: Vec<Sexp>, flavor: Flavor) -> String {
    match flavor {
        Flavor::Text => forms.iter().map(|f| flat(f) + "\n").collect(),
        Flavor::Json => {
            serde_json::to_string_pretty(&Value::Array(forms.iter().map(sexp_to_json).collect())).expect("serializable") + "\n"
        }
    }
}

pub fn write_concept(c: &Concept) -> String {
    flat(&concept_sexp(c))
}

pub fn write_interp(i: &Interpretation) -> String {
    flat(&interp_sexp(i))
}

/// Stable name of an error kind, printed in error reports.
pub fn kind_name(k: ErrorKind) -> &'static str {
    match k {
        ErrorKind::Syntax => "syntax",
        ErrorKind::UnknownLogic => "unknown-logic",
        ErrorKind::UnknownQueryLang => "unknown-query-lang",
        ErrorKind::ReservedPrefix => "reserved-prefix",
        ErrorKind::QueryIndividualNotInAbox => "query-individual-not-in-abox",
        ErrorKind::EmptyAbox => "empty-abox",
        ErrorKind::Logic => "logic",
        ErrorKind::Invalid => "invalid",
    }
}

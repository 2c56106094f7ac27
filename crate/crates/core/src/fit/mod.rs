//! Deciding whether a collection of labeled examples admits a fitting
//! ontology, and building one when it does.
//!
//! Every decider expects individual names to be disjoint across examples
//! (see [`ExampleCollection::normalized`]). Left-hand sides of synthesized
//! CIs are characteristic concepts of example ABoxes; they are kept in
//! structured form ([`CharCi`]) so that alternative encodings can be
//! produced afterwards.

pub mod aq;
pub mod coloring;
pub mod consistency;
pub mod encode;
pub mod ucq;
pub mod verify;

use std::fmt;
use std::sync::Arc;

use crate::construct::CharBuilder;
use crate::error::{Error, Result};
use crate::interp::{Elem, Interpretation};
use crate::query::{Assertion, ExampleCollection, QueryLang};
use crate::sim::SimTable;
use crate::syntax::{Base, Ci, Concept, Ontology, Sym};

pub use aq::{decide_aq_fit, refutation_completion};
pub use coloring::gen_coloring_instance;
pub use consistency::{decide_consistency_fit, synth_alternative_consistency};
pub use encode::{encode_abox_as_ontology, encode_char_poly, synth_from_interpretation};
pub use ucq::{decide_ucq_fit_el, decide_ucq_fit_eli_bounded, fit_no_negatives, gamma_sets, synth_from_witness, GammaMember};
pub use verify::{replay_certificate, verify_fit, Tri, VerifyReport};

/// The auxiliary role that plays the universal role inside each component
/// of a witness.
pub const FRESH_ROLE: &str = "_u";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Depth of the characteristic concepts on synthesized left-hand sides.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DepthPolicy {
    /// The least depth at which k-simulation from the source individual
    /// into the relevant model already coincides with simulation.
    #[default]
    Minimal,
    /// Product of the two domain sizes, which works for every pair of
    /// finite interpretations. Concepts get very large quickly.
    SizeProduct,
}

/// Which fitting ontology a YES answer is turned into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Synthesis {
    /// Characteristic concepts inline.
    #[default]
    Char,
    /// Characteristic concepts replaced by auxiliary names, polynomial size.
    Poly,
    /// The ontology read off a witness interpretation (UCQ problems).
    Interp,
    /// The alternative consistency ontology over "not simulated" names.
    VBar,
}

impl Synthesis {
    pub fn parse(s: &str) -> Option<Synthesis> {
        Some(match s {
            "char" => Synthesis::Char,
            "poly" => Synthesis::Poly,
            "interp" => Synthesis::Interp,
            "vbar" => Synthesis::VBar,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FitConfig {
    pub depth: DepthPolicy,
    /// Largest per-negative domain tried by the ELI witness search.
    pub max_witness_size: usize,
    /// Depth of the tree chase used by bounded verification.
    pub chase_depth: usize,
    /// Bounded verification searches countermodels with up to this many
    /// elements beyond the ABox individuals.
    pub model_extra: usize,
    /// Largest witness domain accepted by [`synth_from_interpretation`].
    pub interp_cap: usize,
    /// Largest number of per-positive choices tried before giving up.
    pub choice_cap: usize,
}

impl Default for FitConfig {
    fn default() -> FitConfig {
        FitConfig { depth: DepthPolicy::Minimal, max_witness_size: 4, chase_depth: 4, model_extra: 2, interp_cap: 8, choice_cap: 100_000 }
    }
}

impl FitConfig {
    pub(crate) fn depth_for(&self, table: &SimTable, d: Elem, left: usize, right: usize) -> usize {
        match self.depth {
            DepthPolicy::Minimal => table.row_depth(d),
            DepthPolicy::SizeProduct => left * right,
        }
    }
}

/// `C^{L,depth}_{source,elem} ⊑ rhs`, kept unexpanded.
#[derive(Clone, Debug)]
pub struct CharCi {
    pub source: Arc<Interpretation>,
    pub elem: Elem,
    pub depth: usize,
    pub base: Base,
    pub rhs: Concept,
}

impl CharCi {
    pub fn lhs(&self) -> Concept {
        CharBuilder::new(self.base, &self.source).concept(self.elem, self.depth)
    }

    pub fn to_ci(&self) -> Ci {
        Ci::new(self.lhs(), self.rhs.clone())
    }

    pub fn element_name(&self) -> &str {
        self.source.element_name(self.elem)
    }
}

/// Why there is no fitting ontology.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// The greatest simulation from a negative ABox into the union of the
    /// positive ones, which is total.
    Simulation { negative: usize, pairs: Vec<(String, String)> },
    /// The negative's atomic query is derived by closing the negatives
    /// under the positives.
    Derived { negative: usize, assertion: Assertion },
    /// No logic with ⊥ was given, so no negative can be made inconsistent.
    NoBottom { negative: usize },
    /// Every combination of per-positive choices entails some negative.
    Exhausted { choices: usize },
    /// The strongest ontology over the signature misses a positive.
    FullOntologyFails { positive: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Simulation { negative, pairs } => {
                write!(f, "total simulation from negative {negative}:")?;
                for (a, b) in pairs {
                    write!(f, " ({a},{b})")?;
                }
                Ok(())
            }
            Certificate::Derived { negative, assertion } => write!(f, "negative {negative}: {assertion} is derived"),
            Certificate::NoBottom { negative } => write!(f, "negative {negative} cannot be made inconsistent without bottom"),
            Certificate::Exhausted { choices } => write!(f, "all {choices} choices entail some negative"),
            Certificate::FullOntologyFails { positive } => write!(f, "positive {positive} fails under the full ontology"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FitDecision {
    pub verdict: Verdict,
    pub ontology: Option<Ontology>,
    /// The characteristic-concept part of `ontology`.
    pub char_cis: Vec<CharCi>,
    /// The rest of `ontology`.
    pub plain: Vec<Ci>,
    pub certificate: Option<Certificate>,
    /// Exhausted search bound of an UNKNOWN answer.
    pub bound: Option<usize>,
    pub witness: Option<Interpretation>,
    /// The closure of the negatives computed for atomic queries.
    pub completion: Option<Interpretation>,
}

impl FitDecision {
    pub(crate) fn yes(char_cis: Vec<CharCi>, plain: Vec<Ci>) -> FitDecision {
        let ontology = Ontology::new(char_cis.iter().map(CharCi::to_ci).chain(plain.iter().cloned()));
        FitDecision {
            verdict: Verdict::Yes,
            ontology: Some(ontology),
            char_cis,
            plain,
            certificate: None,
            bound: None,
            witness: None,
            completion: None,
        }
    }

    pub(crate) fn no(cert: Certificate) -> FitDecision {
        FitDecision {
            verdict: Verdict::No,
            ontology: None,
            char_cis: Vec::new(),
            plain: Vec::new(),
            certificate: Some(cert),
            bound: None,
            witness: None,
            completion: None,
        }
    }

    pub(crate) fn unknown(bound: usize) -> FitDecision {
        FitDecision { bound: Some(bound), ..FitDecision::no(Certificate::Exhausted { choices: 0 }) }
            .with_verdict(Verdict::Unknown)
    }

    fn with_verdict(mut self, v: Verdict) -> FitDecision {
        self.verdict = v;
        if v != Verdict::No {
            self.certificate = None;
        }
        self
    }
}

/// Decides fitting for the collection's logic and query language.
pub fn decide(e: &ExampleCollection, cfg: &FitConfig) -> Result<FitDecision> {
    match e.lang {
        QueryLang::Consistency => decide_consistency_fit(e, cfg),
        QueryLang::Aq => decide_aq_fit(e, cfg),
        QueryLang::Cq | QueryLang::Ucq => ucq::decide_ucq_fit(e, cfg),
    }
}

/// Turns a YES decision into the requested kind of ontology.
pub fn synthesize(e: &ExampleCollection, d: &FitDecision, mode: Synthesis, cfg: &FitConfig) -> Result<Ontology> {
    if d.verdict != Verdict::Yes {
        return Err(Error::Invalid(format!("cannot synthesize from a {} decision", d.verdict)));
    }
    match mode {
        Synthesis::Char => Ok(d.ontology.clone().expect("YES carries an ontology")),
        Synthesis::Poly => Ok(encode_char_poly(&d.char_cis, &d.plain)),
        Synthesis::VBar => synth_alternative_consistency(e, cfg),
        Synthesis::Interp => match &d.witness {
            Some(w) => synth_from_interpretation(e, w, cfg),
            None => Err(Error::Invalid("interpretation synthesis needs a witness (UCQ problems with negatives)".into())),
        },
    }
}

pub(crate) fn fresh_role() -> Sym {
    Sym::new(FRESH_ROLE)
}

pub(crate) fn require_lang(e: &ExampleCollection, ok: &[QueryLang]) -> Result<()> {
    if ok.contains(&e.lang) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("query language {} not handled here", e.lang.tag())))
    }
}

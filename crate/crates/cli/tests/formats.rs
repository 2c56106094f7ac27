mod common;

use common::*;
use hornfit::fit::{decide, gamma_sets, encode_char_poly, synthesize, FitConfig, Synthesis, Verdict};
use hornfit::testing::*;
use hornfit::{Logic, QueryLang, Sym};
use hornfit_cli::format::{parse_instance_as, parse_ontology_as, serialize_instance, serialize_ontology, ErrorKind, Flavor};
use hornfit_cli::sexp::Pos;
use hornfit_cli::{parse_concept, parse_instance, parse_ontology};

fn err(text: &str) -> hornfit_cli::format::FormatError {
    parse_instance(text).unwrap_err()
}

#[test]
fn mentor_transcription_matches_the_fixture() {
    let e = parse_instance(&read("mentor.of")).unwrap();
    assert_eq!((e.positives.len(), e.negatives.len()), (2, 1));
    assert_eq!((e.logic, e.lang), (Logic::EL, QueryLang::Cq));
    assert_eq!(e, mentor_examples());
}

#[test]
fn fixtures_transcribe() {
    assert_eq!(parse_instance(&read("converging_edges_elb.of")).unwrap(), converging_edges(Logic::EL_BOT));
    assert_eq!(parse_instance(&read("bottom_matters_eli.of")).unwrap(), bottom_matters(Logic::ELI));
    assert_eq!(parse_instance(&read("loop_eli.of")).unwrap(), loop_examples(Logic::ELI));
    assert_eq!(parse_instance(&read("loop_back_el.of")).unwrap(), loop_with_back_propagation(Logic::EL));
    assert_eq!(parse_ontology(&read("mentor.ont"), Some(Logic::EL)).unwrap(), mentor_ontology(false));
    assert_eq!(parse_ontology(&read("converging_edges.ont"), Some(Logic::ELI_BOT)).unwrap(), converging_edges_ontology());
    assert_eq!(parse_ontology(&read("loop.ont"), Some(Logic::ELI)).unwrap(), loop_ontology());
}

#[test]
fn errors_carry_locations() {
    let e = err("(logic el)\n(query-lang cq)\n(positive (abox (A a)\n");
    // the innermost unclosed list is reported
    assert_eq!((e.kind, e.pos), (ErrorKind::Syntax, Some(Pos { line: 3, col: 11 })));

    let e = err("(logic alc)\n(query-lang cq)");
    assert_eq!((e.kind, e.pos), (ErrorKind::UnknownLogic, Some(Pos { line: 1, col: 8 })));

    let e = err("(logic el)\n(query-lang cq)\n(positive (abox (_A a)) (query (B a)))");
    assert_eq!((e.kind, e.pos), (ErrorKind::ReservedPrefix, Some(Pos { line: 3, col: 18 })));

    let e = err("(logic el)\n(query-lang cq)\n(positive (abox (A a)) (query (B b)))");
    assert_eq!((e.kind, e.pos), (ErrorKind::QueryIndividualNotInAbox, Some(Pos { line: 3, col: 24 })));

    let e = err("(logic el)\n(query-lang consistency)\n(negative (abox))");
    assert_eq!((e.kind, e.pos), (ErrorKind::EmptyAbox, Some(Pos { line: 3, col: 11 })));

    let e = err("(logic el)\n(query-lang cq)\n(positive (abox (A a)) (query (rooted (some (inv r) B) a)))");
    assert_eq!(e.kind, ErrorKind::Logic);
    assert_eq!(e.msg, "inverse role not allowed in EL");

    let e = err("(logic el)\n(query-lang aq)\n(positive (abox (r a b)) (query (r a b)))");
    assert_eq!(e.kind, ErrorKind::Invalid);
    assert!(err("(query-lang aq)").msg.contains("missing `(logic"));
}

#[test]
fn inverse_concept_under_el_is_rejected() {
    let e = parse_concept("(and A (some (inv r) B))", Some(Logic::EL)).unwrap_err();
    assert_eq!(e.msg, "inverse role not allowed in EL");
    assert!(parse_concept("(and A (some (inv r) B))", Some(Logic::ELI)).is_ok());
    assert_eq!(parse_concept("bot", Some(Logic::ELI)).unwrap_err().msg, "bot not allowed in ELI");
}

#[test]
fn corpus_round_trips() {
    for name in instances() {
        let e = parse_instance_as(&read(&name), Flavor::of_path(&name)).unwrap();
        for flavor in [Flavor::Text, Flavor::Json] {
            let text = serialize_instance(&e, flavor);
            let back = parse_instance_as(&text, flavor).unwrap();
            assert_eq!(back, e, "{name} {flavor:?}");
            assert_eq!(serialize_instance(&back, flavor), text, "{name} {flavor:?} not byte-stable");
        }
    }
}

#[test]
fn synthesized_ontologies_round_trip() {
    let cfg = FitConfig::default();
    let mut with_sims = 0;
    for name in instances() {
        let e = parse_instance_as(&read(&name), Flavor::of_path(&name)).unwrap().normalized();
        let d = decide(&e, &cfg).unwrap();
        if d.verdict != Verdict::Yes {
            continue;
        }
        let mut os = vec![d.ontology.clone().unwrap(), encode_char_poly(&d.char_cis, &d.plain)];
        if let Ok(o) = synthesize(&e, &d, Synthesis::Interp, &cfg) {
            os.push(o);
        }
        // menus of simulation-quantifier CIs, with ABoxes as payloads
        for p in e.positives.iter().filter(|p| p.query.is_some()) {
            for m in gamma_sets(p, e.logic, &Sym::new("_u")).unwrap() {
                os.push(m.ontology);
            }
        }
        for o in os {
            with_sims += o.cis().iter().any(|c| c.rhs.has_sim() || c.lhs.has_sim()) as usize;
            for flavor in [Flavor::Text, Flavor::Json] {
                let text = serialize_ontology(&o, flavor);
                assert_eq!(parse_ontology_as(&text, Some(e.logic), flavor).unwrap(), o, "{name} {flavor:?}\n{text}");
            }
        }
    }
    assert!(with_sims > 0, "no simulation payload exercised");
}

#[test]
fn random_ontologies_round_trip() {
    let sig = small_signature();
    let mut r = rng(31);
    for _ in 0..200 {
        let o = random_el_ontology(&mut r, 3, &sig, 0.3, 0.2);
        let text = serialize_ontology(&o, Flavor::Text);
        assert_eq!(parse_ontology(&text, None).unwrap(), o, "{text}");
    }
}

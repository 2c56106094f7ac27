use std::time::{Duration, Instant};

use hornfit::fit::aq::is_closed;
use hornfit::fit::{
    decide, encode_char_poly, refutation_completion, replay_certificate, synth_alternative_consistency, synthesize, verify_fit, FitConfig,
    Synthesis, Tri, Verdict,
};
use hornfit::testing::*;
use hornfit::{ABox, Base, Example, ExampleCollection, Interpretation, Logic, QueryLang, Signature, Sym, Ucq};
use rand::seq::SliceRandom;
use rand::Rng;

fn sig() -> Signature {
    Signature::new(["A", "B"], ["r"])
}

fn total(base: Base, i: &Interpretation, j: &Interpretation) -> bool {
    let rel = naive_greatest_simulation(base, i, j);
    i.elements().all(|d| rel.iter().any(|&(x, _)| x == d))
}

fn union(xs: &[Example]) -> Interpretation {
    let parts: Vec<Interpretation> = xs.iter().map(|x| x.abox.to_interpretation()).collect();
    Interpretation::disjoint_union(&parts).unwrap().0
}

fn consistency_instance(seed: u64, logic: Logic) -> ExampleCollection {
    let mut r = rng(seed);
    let mk = |r: &mut TestRng| {
        let n = r.gen_range(1..=3);
        let size = r.gen_range(1..=4);
        Example::consistency(random_abox(r, n, &sig(), "a", size))
    };
    let pos = (0..r.gen_range(1..=2)).map(|_| mk(&mut r)).collect();
    let neg = (0..r.gen_range(1..=2)).map(|_| mk(&mut r)).collect();
    ExampleCollection::new(pos, neg, logic, QueryLang::Consistency).unwrap().normalized()
}

#[test]
fn consistency_fitting_matches_the_simulation_oracle() {
    let cfg = FitConfig::default();
    let mut yes = 0;
    for seed in 0..150 {
        for logic in [Logic::EL_BOT, Logic::ELI_BOT] {
            let e = consistency_instance(seed, logic);
            let d = decide(&e, &cfg).unwrap();
            let plus = union(&e.positives);
            let expect = e.negatives.iter().all(|n| !total(logic.base, &n.abox.to_interpretation(), &plus));
            assert_eq!(d.verdict == Verdict::Yes, expect, "seed {seed} {logic:?}");
            if expect {
                yes += 1;
                for o in [
                    d.ontology.clone().unwrap(),
                    encode_char_poly(&d.char_cis, &d.plain),
                    synth_alternative_consistency(&e, &cfg).unwrap(),
                ] {
                    assert_eq!(verify_fit(&o, &e, &cfg).unwrap().overall, Tri::True, "seed {seed} {logic:?}\n{o}");
                }
            } else {
                assert!(replay_certificate(&e, &d, &cfg).unwrap(), "seed {seed}");
            }
        }
    }
    assert!(yes > 20, "only {yes} fitting instances");
}

fn aq_instance(seed: u64, logic: Logic) -> ExampleCollection {
    let mut r = rng(seed);
    let mk = |r: &mut TestRng| {
        let n = r.gen_range(1..=2);
        let size = r.gen_range(1..=3);
        let a = random_abox(r, n, &sig(), "a", size);
        let inds: Vec<Sym> = a.individuals().into_iter().collect();
        let q = ["A", "B", "Q"].choose(r).unwrap();
        Example::with_query(a, Ucq::aq(q, inds.choose(r).unwrap().as_str())).unwrap()
    };
    let pos = (0..r.gen_range(1..=2)).map(|_| mk(&mut r)).collect();
    let neg = (0..r.gen_range(1..=2)).map(|_| mk(&mut r)).collect();
    ExampleCollection::new(pos, neg, logic, QueryLang::Aq).unwrap().normalized()
}

/// Some completion of the negatives refutes every negative query and is
/// closed under the positives, by trying all of them.
fn aq_oracle(e: &ExampleCollection) -> bool {
    let base = union(&e.negatives);
    let qs: Vec<Sym> = e.positives.iter().map(|p| p.query.as_ref().unwrap().as_aq().unwrap().0.clone()).collect();
    let facts: Vec<(usize, &Sym)> = base.elements().flat_map(|b| qs.iter().map(move |q| (b, q))).collect();
    assert!(facts.len() < 16);
    (0u32..1 << facts.len()).any(|mask| {
        let mut c = base.clone();
        for (k, (b, q)) in facts.iter().enumerate() {
            if mask >> k & 1 == 1 {
                c.add_label(*b, q);
            }
        }
        let refutes = e.negatives.iter().all(|n| {
            let (q, a) = n.query.as_ref().unwrap().as_aq().unwrap();
            !c.has_label(c.individual(a).unwrap(), q.as_str())
        });
        let closed = e.positives.iter().all(|p| {
            let (q, a) = p.query.as_ref().unwrap().as_aq().unwrap();
            let src = p.abox.to_interpretation();
            let rel = naive_greatest_simulation(e.logic.base, &src, &c);
            if e.logic.bottom && !src.elements().all(|d| rel.iter().any(|&(x, _)| x == d)) {
                return true;
            }
            let d = src.individual(a).unwrap();
            rel.iter().filter(|&&(x, _)| x == d).all(|&(_, b)| c.has_label(b, q.as_str()))
        });
        refutes && closed
    })
}

#[test]
fn aq_fitting_matches_exhaustive_completions() {
    let cfg = FitConfig::default();
    let mut yes = 0;
    for seed in 0..150 {
        for logic in [Logic::EL, Logic::EL_BOT, Logic::ELI, Logic::ELI_BOT] {
            let e = aq_instance(seed, logic);
            let d = decide(&e, &cfg).unwrap();
            assert_eq!(d.verdict == Verdict::Yes, aq_oracle(&e), "seed {seed} {logic:?}");
            if d.verdict == Verdict::Yes {
                yes += 1;
                let o = d.ontology.clone().unwrap();
                assert_ne!(verify_fit(&o, &e, &cfg).unwrap().overall, Tri::False, "seed {seed} {logic:?}\n{o}");
                let p = encode_char_poly(&d.char_cis, &d.plain);
                assert_ne!(verify_fit(&p, &e, &cfg).unwrap().overall, Tri::False, "seed {seed} {logic:?}");
            } else {
                assert!(replay_certificate(&e, &d, &cfg).unwrap(), "seed {seed}");
            }
        }
    }
    assert!(yes > 50, "only {yes} fitting instances");
}

#[test]
fn refutation_completion_is_least() {
    // Any closed completion contains the computed one.
    for seed in 0..100 {
        let e = aq_instance(seed, Logic::EL);
        let least = refutation_completion(&e).unwrap();
        let mut r = rng(seed ^ 0xABC);
        let mut c = union(&e.negatives);
        for b in c.elements() {
            for q in ["A", "B", "Q"] {
                if r.gen_bool(0.3) {
                    c.add_label(b, &Sym::new(q));
                }
            }
        }
        // Close by hand: add what the positives force until stable.
        while !is_closed(&e, e.logic, &c).unwrap() {
            for p in &e.positives {
                let (q, a) = p.query.as_ref().unwrap().as_aq().unwrap();
                let src = p.abox.to_interpretation();
                let d = src.individual(a).unwrap();
                for (x, b) in naive_greatest_simulation(Base::El, &src, &c) {
                    if x == d {
                        c.add_label(b, q);
                    }
                }
            }
        }
        for b in least.elements() {
            assert!(least.labels(b).is_subset(c.labels(b)), "seed {seed}");
        }
    }
}

fn ucq_instance(seed: u64, logic: Logic) -> ExampleCollection {
    let mut r = rng(seed);
    let mk = |r: &mut TestRng| {
        let n = r.gen_range(1..=2);
        let size = r.gen_range(1..=3);
        let a = random_abox(r, n, &sig(), "a", size);
        let inds: Vec<Sym> = a.individuals().into_iter().collect();
        let atoms = r.gen_range(1..=2);
        let q = random_cq(r, 1, &inds[..1], &Signature::new(["A", "B", "Q"], ["r"]), atoms);
        Example::with_query(a, Ucq::single(q)).unwrap()
    };
    let pos = (0..r.gen_range(1..=2)).map(|_| mk(&mut r)).collect();
    let neg = (0..r.gen_range(1..=2)).map(|_| mk(&mut r)).collect();
    ExampleCollection::new(pos, neg, logic, QueryLang::Cq).unwrap().normalized()
}

#[test]
fn el_ucq_fits_verify_and_encodings_agree() {
    let cfg = FitConfig::default();
    let mut yes = 0;
    for seed in 0..120 {
        for logic in [Logic::EL, Logic::EL_BOT] {
            let e = ucq_instance(seed, logic);
            let d = decide(&e, &cfg).unwrap();
            assert_ne!(d.verdict, Verdict::Unknown);
            if d.verdict != Verdict::Yes {
                continue;
            }
            yes += 1;
            let o = d.ontology.clone().unwrap();
            let r = verify_fit(&o, &e, &cfg).unwrap();
            assert_ne!(r.overall, Tri::False, "seed {seed} {logic:?}\n{o}");
            let p = synthesize(&e, &d, Synthesis::Poly, &cfg).unwrap();
            let rp = verify_fit(&p, &e, &cfg).unwrap();
            if r.overall == Tri::True && rp.overall == Tri::True {
                assert_eq!(r, rp);
            }
            assert_ne!(rp.overall, Tri::False, "seed {seed} {logic:?}");
        }
    }
    assert!(yes > 30, "only {yes} fitting instances");
}

#[test]
fn el_ucq_decisions_ignore_names_and_order() {
    let cfg = FitConfig::default();
    for seed in 0..80 {
        let e = ucq_instance(seed, Logic::EL_BOT);
        let d = decide(&e, &cfg).unwrap();
        let mut shuffled = e.clone();
        shuffled.positives.reverse();
        shuffled.negatives.reverse();
        let renamed = ExampleCollection::new(
            e.positives.iter().map(|x| rename(x, "z")).collect(),
            e.negatives.iter().map(|x| rename(x, "w")).collect(),
            e.logic,
            e.lang,
        )
        .unwrap();
        assert_eq!(decide(&shuffled, &cfg).unwrap().verdict, d.verdict, "seed {seed}");
        assert_eq!(decide(&renamed, &cfg).unwrap().verdict, d.verdict, "seed {seed}");
        // Same input, same output.
        assert_eq!(format!("{:?}", decide(&e, &cfg).unwrap().ontology), format!("{:?}", d.ontology));
    }
}

fn rename(x: &Example, prefix: &str) -> Example {
    let f = |s: &Sym| Sym::new(&format!("{prefix}{s}"));
    let abox: ABox = x.abox.rename(f);
    let q = x.query.as_ref().map(|q| {
        q.map_terms(|t| if t.is_var() { t.clone() } else { hornfit::Term::ind(&format!("{prefix}{}", t.name())) })
    });
    Example::new(abox, q).unwrap()
}

#[test]
fn polynomial_cases_scale() {
    let big = Signature::new(["A", "B", "C", "D"], ["r", "s"]);
    let cfg = FitConfig::default();
    for (k, logic) in [Logic::EL_BOT, Logic::ELI_BOT, Logic::EL, Logic::ELI].into_iter().enumerate() {
        let mut r = rng(1000 + k as u64);
        let abox = |r: &mut TestRng, p: &str| random_abox(r, 60, &big, p, 200);
        let cons = ExampleCollection::new(
            (0..3).map(|_| Example::consistency(abox(&mut r, "a"))).collect(),
            (0..2).map(|_| Example::consistency(abox(&mut r, "a"))).collect(),
            logic,
            QueryLang::Consistency,
        )
        .unwrap()
        .normalized();
        let aq = ExampleCollection::new(
            (0..3).map(|_| Example::with_query(abox(&mut r, "a"), Ucq::aq("Q", "a0")).unwrap()).collect(),
            (0..2).map(|_| Example::with_query(abox(&mut r, "a"), Ucq::aq("Q", "a1")).unwrap()).collect(),
            logic,
            QueryLang::Aq,
        )
        .unwrap()
        .normalized();
        for e in [cons, aq] {
            let t = Instant::now();
            decide(&e, &cfg).unwrap();
            assert!(t.elapsed() < Duration::from_secs(10), "{logic:?} {:?}: {:?}", e.lang, t.elapsed());
        }
    }
}

#[test]
fn eli_bounded_fits_never_verify_false() {
    let cfg = FitConfig::default();
    let mut yes = 0;
    for seed in 0..60 {
        for logic in [Logic::ELI, Logic::ELI_BOT] {
            let e = ucq_instance(seed, logic);
            let d = hornfit::fit::decide_ucq_fit_eli_bounded(&e, 3, &cfg).unwrap();
            assert_ne!(d.verdict, Verdict::No);
            if d.verdict == Verdict::Yes {
                yes += 1;
                let o = d.ontology.as_ref().unwrap();
                assert_ne!(verify_fit(o, &e, &cfg).unwrap().overall, Tri::False, "seed {seed} {logic:?}\n{o}");
            }
        }
    }
    assert!(yes > 10, "only {yes} fitting instances");
}

mod common;

use common::*;
use hornfit_cli::report::stable_part;

#[test]
fn decide_writes_a_verifying_ontology() {
    let dir = scratch("decide");
    let out = dir.join("mentor.ont").to_string_lossy().into_owned();
    let (code, rep) = run(&["decide", "--in", &corpus_file("mentor.of"), "--out", &out]);
    assert_eq!(code, 0, "{rep}");
    assert!(rep.contains("verdict: YES"));
    assert!(rep.contains(&format!("ontology: {out}")));
    let (code, rep) = run(&["verify", "--in", &corpus_file("mentor.of"), "--ontology", &out]);
    assert_eq!(code, 0, "{rep}");
    assert!(rep.contains("fits: true"));
}

#[test]
fn decide_defaults_to_a_file_next_to_the_input() {
    let dir = scratch("default-out");
    let input = dir.join("x.of");
    std::fs::copy(corpus().join("bottom_matters_elb.of"), &input).unwrap();
    let (code, rep) = run(&["decide", "--in", input.to_str().unwrap()]);
    assert_eq!(code, 0, "{rep}");
    assert!(dir.join("x.fit.ont").exists());
}

#[test]
fn exit_codes_follow_the_verdict() {
    assert_eq!(run(&["decide", "--in", &corpus_file("bottom_matters_el.of")]).0, 1);
    let (code, rep) = run(&["decide", "--in", &corpus_file("loop_back_eli.of"), "--max-witness-size", "3"]);
    assert_eq!(code, 2, "{rep}");
    assert!(rep.contains("verdict: UNKNOWN"));
    let (code, rep) = run(&["verify", "--in", &corpus_file("loop_back_eli.of"), "--ontology", &corpus_file("loop.ont")]);
    assert_eq!(code, 1, "{rep}");
}

#[test]
fn sim_without_a_total_simulation_exits_one() {
    let from = corpus_file("converging_neg.abox");
    let to = corpus_file("converging_pos.abox");
    let (code, rep) = run(&["sim", "--logic", "elib", "--from", &from, "--to", &to]);
    assert_eq!(code, 1, "{rep}");
    assert!(rep.contains("total: false"));
    assert!(rep.contains("unmatched: a1 a2 b"));
    let (code, rep) = run(&["sim", "--logic", "elb", "--from", &from, "--to", &to]);
    assert_eq!(code, 0);
    assert!(rep.contains("(b,b1) (b,b2)"));
}

#[test]
fn coloring_instance_of_k4_fits() {
    let dir = scratch("k4");
    let out = dir.join("k4.of").to_string_lossy().into_owned();
    let (code, rep) = run(&["gen-coloring", "--graph", &corpus_file("k4.edges"), "--protected", "", "--out", &out]);
    assert_eq!(code, 0, "{rep}");
    let fit = dir.join("k4.fit.ont").to_string_lossy().into_owned();
    let (code, rep) = run(&["decide", "--in", &out, "--out", &fit]);
    assert_eq!(code, 0, "{rep}");
    // a protected edge 1-3 forces different colors; the path is colorable
    let (code, _) = run(&["gen-coloring", "--graph", &corpus_file("path3.edges"), "--protected", "1,2", "--out", &out]);
    assert_eq!(code, 0);
    assert_eq!(run(&["decide", "--in", &out, "--out", &fit]).0, 1);
}

#[test]
fn entail_and_chase() {
    let (code, rep) = run(&[
        "entail",
        "--abox",
        &corpus_file("loop_neg.abox"),
        "--ontology",
        &corpus_file("loop.ont"),
        "--query",
        &corpus_file("loop_neg.query"),
        "--logic",
        "eli",
    ]);
    assert_eq!(code, 1, "{rep}");
    assert!(rep.contains("entailed: false"));
    let (code, rep) = run(&["entail", "--abox", &corpus_file("converging_neg.abox"), "--ontology", &corpus_file("converging_edges.ont")]);
    assert_eq!(code, 0, "{rep}");
    let (code, rep) = run(&["chase", "--abox", &corpus_file("converging_pos.abox"), "--ontology", &corpus_file("converging_edges.ont")]);
    assert_eq!(code, 0, "{rep}");
    assert!(rep.contains("consistent: true"));
}

#[test]
fn errors_map_to_usage_codes() {
    let dir = scratch("errors");
    let bad = dir.join("bad.of");
    std::fs::write(&bad, "(logic alc)\n(query-lang cq)\n").unwrap();
    let (code, rep) = run(&["decide", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 65);
    assert!(rep.contains("1:8: unknown logic tag `alc`"), "{rep}");
    assert_eq!(run(&["decide", "--in", dir.join("missing.of").to_str().unwrap()]).0, 66);
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["decide"]).0, 64);
    assert_eq!(run(&["gen-coloring", "--graph", &corpus_file("k4.edges"), "--protected", "9"]).0, 64);
}

#[test]
fn reports_are_deterministic() {
    let dir = scratch("determinism");
    for name in instances() {
        let mut seen: Option<(String, Vec<u8>)> = None;
        for _ in 0..2 {
            let out = dir.join("o.ont").to_string_lossy().into_owned();
            let _ = std::fs::remove_file(&out);
            let (_, rep) = run(&["decide", "--in", &corpus_file(&name), "--out", &out]);
            let file = std::fs::read(&out).unwrap_or_default();
            let now = (stable_part(&rep).to_string(), file);
            if let Some(prev) = &seen {
                assert_eq!(prev, &now, "{name}");
            }
            seen = Some(now);
        }
    }
}

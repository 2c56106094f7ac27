use hornfit::entail::{chase_universal_model, ucq_entailed_by_universal};
use hornfit::eval::{is_model, satisfies_abox, satisfies_ucq};
use hornfit::sim::max_simulation;
use hornfit::testing::*;
use hornfit::{ABox, Logic, Ontology, Signature, Sym, Ucq};
use rand::Rng;

const INSTANCES: u64 = 300;

struct Instance {
    abox: ABox,
    o: Ontology,
    q: Ucq,
}

fn instance(seed: u64) -> Instance {
    let sig = Signature::new(["A", "B"], ["r"]);
    let mut r = rng(seed);
    let n = r.gen_range(1..=3);
    let size = r.gen_range(1..=3);
    let abox = random_abox(&mut r, n, &sig, "a", size);
    let o = random_el_ontology(&mut r, 2, &sig, 0.25, 0.15);
    let inds: Vec<Sym> = abox.individuals().into_iter().collect();
    let atoms = r.gen_range(1..=3);
    let q = Ucq::single(random_cq(&mut r, 2, &inds[..1], &sig, atoms));
    Instance { abox, o, q }
}

#[test]
fn chase_output_is_a_model() {
    for seed in 0..INSTANCES {
        let x = instance(seed);
        let m = chase_universal_model(&x.abox, &x.o).unwrap();
        if !m.inconsistent {
            assert!(satisfies_abox(&m.interp, &x.abox), "seed {seed}");
            assert!(is_model(&m.interp, &x.o), "seed {seed}: {}", x.o);
        }
    }
}

#[test]
fn chase_simulates_into_every_small_model() {
    let sig = Signature::new(["A", "B"], ["r"]);
    let mut checked = 0usize;
    for seed in 0..INSTANCES {
        let x = instance(seed);
        let m = chase_universal_model(&x.abox, &x.o).unwrap();
        let inds: Vec<(usize, usize)> = x
            .abox
            .individuals()
            .iter()
            .map(|a| (m.interp.individual(a).unwrap(), x.abox.to_interpretation().individual(a).unwrap()))
            .collect();
        for_each_small_model(&x.abox, &x.o, &sig, 3, &mut |j| {
            assert!(!m.inconsistent, "seed {seed}: chase inconsistent but a model exists");
            let s = max_simulation(Logic::EL_BOT, &m.interp, j);
            assert!(s.total, "seed {seed}");
            for &(d, e) in &inds {
                assert!(s.contains(d, e), "seed {seed}");
            }
            checked += 1;
            true
        });
    }
    assert!(checked > 1000);
}

#[test]
fn non_entailment_is_witnessed_by_the_forest_unraveling() {
    for seed in 0..INSTANCES {
        let x = instance(seed);
        if ucq_entailed_by_universal(&x.abox, &x.o, &x.q, Logic::EL_BOT).unwrap() {
            continue;
        }
        let m = chase_universal_model(&x.abox, &x.o).unwrap();
        assert!(!m.inconsistent);
        let depth = x.q.cqs().iter().map(|c| c.atoms().len()).max().unwrap() + 1;
        assert!(!satisfies_ucq(&m.forest_unraveling(depth), &x.q).unwrap(), "seed {seed}");
    }
}


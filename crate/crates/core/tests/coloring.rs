use hornfit::fit::{decide, gen_coloring_instance, FitConfig, Verdict};
use hornfit::testing::{all_graphs, coloring_extension_fails};
use hornfit::Logic;

fn fits(n: usize, edges: &[(usize, usize)], p: usize, logic: Logic) -> bool {
    let e = gen_coloring_instance(n, edges, p, logic).unwrap().normalized();
    decide(&e, &FitConfig::default()).unwrap().verdict == Verdict::Yes
}

#[test]
fn named_graphs() {
    let k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    assert!(!fits(2, &[(1, 2)], 0, Logic::EL));
    assert!(fits(4, &k4, 0, Logic::EL));
    assert!(!fits(3, &[(1, 3), (3, 2)], 2, Logic::EL));
    assert!(fits(4, &[(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)], 2, Logic::EL));
}

#[test]
fn agrees_with_brute_force_up_to_four_vertices() {
    for n in 1..=4 {
        for g in all_graphs(n) {
            for p in 0..=n.min(2) {
                for logic in [Logic::EL, Logic::EL_BOT] {
                    assert_eq!(fits(n, &g, p, logic), coloring_extension_fails(n, &g, p), "n={n} {g:?} |P|={p} {logic:?}");
                }
            }
        }
    }
}

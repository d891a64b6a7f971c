mod common;

use std::collections::BTreeSet;

use common::{expected, letters, lettered};
use hivering::excavation::{bottom_surface, TetPoint};
use hivering::laurent::symbolic_excavate;
use hivering::speyer::{build_scatter_graph, closed_form, entry_subgraph, enumerate_matchings, matching_monomial};

#[test]
fn entry_below_f_matches_the_worked_example() {
    let g = build_scatter_graph(4).unwrap();
    let below_f = TetPoint::new(1, 0, 1, 2);
    let s = entry_subgraph(&g, below_f).unwrap();
    let interior: BTreeSet<TetPoint> = s.interior.keys().copied().collect();
    let l = letters();
    assert_eq!(interior, [l["T"], l["E"], l["F"]].into_iter().collect());
    assert_eq!(s.exterior.len(), 7);
    let matchings = enumerate_matchings(&s);
    assert_eq!(matchings.len(), 4);
    let monos: BTreeSet<String> = matchings.iter().map(|m| matching_monomial(&s, m).to_string()).collect();
    assert_eq!(monos.len(), 4);

    let cf = closed_form(&g, below_f).unwrap();
    let want = expected(&[
        &["-T", "+Λ", "+L"],
        &["-F", "-T", "+G", "+Γ", "+L"],
        &["+Q", "-E", "+Φ"],
        &["-F", "+Q", "-E", "+D", "+Γ"],
    ]);
    assert_eq!(lettered(&cf.tropical), want);

    let symbolic = symbolic_excavate(4, false).unwrap();
    assert_eq!(lettered(&symbolic.bottom[&below_f].tropicalize().unwrap()), want);
}

#[test]
fn closed_forms_equal_symbolic_labels() {
    for n in 2..=4 {
        let g = build_scatter_graph(n).unwrap();
        let symbolic = symbolic_excavate(n, false).unwrap();
        let mut checked = 0;
        for b in bottom_surface(n) {
            if b.z == 0 || b.w == 0 {
                continue;
            }
            let cf = closed_form(&g, b).unwrap();
            assert_eq!(cf.laurent, symbolic.bottom[&b], "n={n} b={b}");
            assert_eq!(cf.laurent.len(), cf.matchings);
            checked += 1;
        }
        assert_eq!(checked, (n - 1) * (n - 1));
    }
}

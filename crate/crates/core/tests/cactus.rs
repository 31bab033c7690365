use std::sync::Arc;

use cactus_core::cactus::{sigma, wall_crossing, CactusGenerator, CactusWord};
use cactus_core::tableaux::{rsk, weyl_to_oneline_with, OneLineConvention, ONE_LINE_CONVENTION};
use cactus_core::{GroupData, WallCrossingTable, WeylGroup};

fn data(name: &str) -> GroupData {
    GroupData::build(Arc::new(WeylGroup::from_name(name).unwrap())).unwrap()
}

#[test]
fn alpha_is_bounded_and_fixed_at_the_ends() {
    for name in ["A1", "A3", "B3", "G2", "D4"] {
        let d = data(name);
        let g = d.group.clone();
        let top = g.length(g.longest()) as i32;
        for w in g.ids() {
            let (_, a) = sigma(&d, w).unwrap();
            assert!(a.k.abs() <= top);
            assert!(a.sign == 1 || a.sign == -1);
        }
        let (image, a) = sigma(&d, g.identity()).unwrap();
        // T_{w_0} has C_e-coefficient (-v^-1)^{l(w_0)}
        let sign = if top % 2 == 0 { 1 } else { -1 };
        assert_eq!((image, a.sign, a.k), (g.identity(), sign, -top));
        let (image, a) = sigma(&d, g.longest()).unwrap();
        assert_eq!((image, a.sign, a.k), (g.longest(), 1, top));
    }
}

#[test]
fn sigma_is_an_involution_on_two_sided_cells() {
    for name in ["A4", "B3", "D4"] {
        let d = data(name);
        for w in d.group.ids() {
            let (s, _) = sigma(&d, w).unwrap();
            assert_eq!(sigma(&d, s).unwrap().0, w);
            assert_eq!(d.cells.two_sided_id(s), d.cells.two_sided_id(w));
        }
    }
}

#[test]
fn cactus_words_act_right_to_left() {
    let d = data("A3");
    let wct = WallCrossingTable::build(&d).unwrap();
    let g = d.group.clone();
    let a = g.diagram().subdiagram(&[1, 2]).unwrap();
    let b = g.diagram().subdiagram(&[2, 3]).unwrap();
    let word = CactusWord(vec![CactusGenerator::new(a.clone()).unwrap(), CactusGenerator::new(b.clone()).unwrap()]);
    for w in g.ids() {
        assert_eq!(wct.act(&word, w).unwrap(), wct.wc(&a, wct.wc(&b, w).unwrap()).unwrap());
        assert_eq!(wall_crossing(&g, &a, w).unwrap(), wct.wc(&a, w).unwrap());
    }
    assert!(CactusGenerator::new(g.diagram().subdiagram(&[1, 3]).unwrap()).is_err());
}

#[test]
fn inverse_convention_breaks_the_evacuation_identity() {
    let d = data("A3");
    let wct = WallCrossingTable::build(&d).unwrap();
    let g = d.group.clone();
    let full = g.diagram().full();
    let holds = |conv: OneLineConvention| {
        g.ids().all(|w| {
            let image = wct.wc(&full, w).unwrap();
            let a = rsk(&weyl_to_oneline_with(&g, w, conv).unwrap()).unwrap();
            let b = rsk(&weyl_to_oneline_with(&g, image, conv).unwrap()).unwrap();
            b.p == a.p && b.q == cactus_core::tableaux::evacuation(&a.q)
        })
    };
    assert!(holds(ONE_LINE_CONVENTION));
    assert!(!holds(OneLineConvention::Inverse));
}

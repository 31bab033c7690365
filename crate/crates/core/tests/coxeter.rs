use std::collections::BTreeSet;

use cactus_core::{DynkinDiagram, ElementId, Subdiagram, WeylGroup};

fn all_subdiagrams(d: &DynkinDiagram) -> Vec<Subdiagram> {
    let n = d.rank();
    (0u32..1 << n)
        .map(|mask| {
            let nodes: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            d.subdiagram(&nodes).unwrap()
        })
        .collect()
}

/// Products of all subwords of a reduced word of `w`.
fn subword_products(g: &WeylGroup, w: ElementId) -> BTreeSet<ElementId> {
    let word = g.word(w);
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &s)| s).collect();
            g.element_from_word(&sub).unwrap()
        })
        .collect()
}

#[test]
fn bruhat_order_matches_subword_property() {
    for name in ["A2", "A3", "B2", "G2"] {
        let g = WeylGroup::from_name(name).unwrap();
        for w in g.ids() {
            let below = subword_products(&g, w);
            for y in g.ids() {
                assert_eq!(g.bruhat_leq(y, w), below.contains(&y), "{name}: {} <= {}", g.format(y), g.format(w));
            }
        }
    }
}

#[test]
fn group_orders_follow_classification() {
    let fact = |n: usize| (1..=n).product::<usize>();
    for n in 1..=5 {
        assert_eq!(WeylGroup::from_name(&format!("A{n}")).unwrap().order(), fact(n + 1));
    }
    for n in 2..=5 {
        assert_eq!(WeylGroup::from_name(&format!("B{n}")).unwrap().order(), (1 << n) * fact(n));
        assert_eq!(WeylGroup::from_name(&format!("C{n}")).unwrap().order(), (1 << n) * fact(n));
    }
    assert_eq!(WeylGroup::from_name("D4").unwrap().order(), 192);
    assert_eq!(WeylGroup::from_name("D5").unwrap().order(), 1920);
    assert_eq!(WeylGroup::from_name("F4").unwrap().order(), 1152);
    assert_eq!(WeylGroup::from_name("G2").unwrap().order(), 12);
}

#[test]
fn length_identities() {
    for name in ["A3", "B3", "G2", "D4"] {
        let g = WeylGroup::from_name(name).unwrap();
        let w0 = g.longest();
        assert_eq!(g.length(w0), g.num_positive_roots());
        for w in g.ids() {
            assert_eq!(g.length(w), g.length(g.inverse(w)));
            assert_eq!(g.length(g.multiply(w0, w)), g.length(w0) - g.length(w));
            assert_eq!(g.element_from_word(g.word(w)).unwrap(), w);
        }
    }
}

#[test]
fn coset_decomposition_is_unique() {
    for name in ["A3", "B3"] {
        let g = WeylGroup::from_name(name).unwrap();
        for sub in all_subdiagrams(g.diagram()) {
            let in_parabolic: Vec<ElementId> =
                g.ids().filter(|&x| g.word(x).iter().all(|s| sub.contains(*s))).collect();
            for w in g.ids() {
                let (head, tail) = g.coset_decompose(w, &sub);
                assert_eq!(g.multiply(head, tail), w);
                assert_eq!(g.length(head) + g.length(tail), g.length(w));
                assert!(in_parabolic.contains(&tail));
                let minimal = |u: ElementId| sub.nodes().iter().all(|&s| !g.is_right_descent(u, s));
                assert!(minimal(head));
                let factorizations =
                    in_parabolic.iter().filter(|&&x| minimal(g.multiply(w, g.inverse(x)))).count();
                assert_eq!(factorizations, 1, "{name} {sub} w = {}", g.format(w));
            }
        }
    }
}

#[test]
fn diagram_involution_preserves_bonds() {
    for name in ["A4", "B3", "D4", "D5", "E6", "F4", "G2"] {
        let g = WeylGroup::from_name(name).unwrap();
        let d = g.diagram();
        for sub in d.connected_subdiagrams() {
            let phi = g.diagram_involution(&sub).unwrap();
            let wd = g.longest_element(&sub);
            for &i in sub.nodes() {
                assert_eq!(phi[&phi[&i]], i);
                let conj = g.multiply(g.multiply(wd, g.generator(i)), wd);
                assert_eq!(conj, g.generator(phi[&i]));
                for &j in sub.nodes() {
                    assert_eq!(d.entry(i, j), d.entry(phi[&i], phi[&j]), "{name} {sub}");
                }
            }
        }
    }
}

#[test]
fn star_stays_inside_outer() {
    let g = WeylGroup::from_name("D4").unwrap();
    let subs = g.diagram().connected_subdiagrams();
    for outer in &subs {
        for inner in subs.iter().filter(|s| s.is_subset_of(outer)) {
            let star = g.star(inner, outer).unwrap();
            assert!(star.is_subset_of(outer));
            assert_eq!(star.len(), inner.len());
            assert_eq!(&g.star(&star, outer).unwrap(), inner);
        }
    }
}

#[test]
fn invalid_specs_are_rejected() {
    for bad in ["A0", "B1", "C1", "D3", "E9", "F3", "G3", "X2", "A", "a2", "A02"] {
        assert!(DynkinDiagram::from_name(bad).is_err(), "{bad}");
    }
    assert!(DynkinDiagram::from_cartan(vec![vec![2, -3], vec![-3, 2]]).is_err());
    assert!(DynkinDiagram::from_cartan(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).is_err());
}

//! Independent KL oracle: solves the bar-invariance equations directly in the
//! T-basis, using only group multiplication and lengths. Coefficients are plain
//! `BTreeMap<exponent, coefficient>` so no library arithmetic is involved.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cactus_core::{ElementId, LaurentPoly, WeylGroup};

pub type Poly = BTreeMap<i32, i64>;

pub fn add_into(acc: &mut Poly, p: &Poly, factor: i64, shift: i32) {
    for (&e, &c) in p {
        let slot = acc.entry(e + shift).or_insert(0);
        *slot += factor * c;
        if *slot == 0 {
            acc.remove(&(e + shift));
        }
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&e, &c) in a {
        add_into(&mut out, b, c, e);
    }
    out
}

pub fn bar(p: &Poly) -> Poly {
    p.iter().map(|(&e, &c)| (-e, c)).collect()
}

pub fn to_poly(p: &LaurentPoly) -> Poly {
    p.terms().iter().copied().collect()
}

fn right_mul_inverse_gen(g: &WeylGroup, x: &BTreeMap<usize, Poly>, node: usize) -> BTreeMap<usize, Poly> {
    // T_y T_s^{-1}: T_{ys} when ys < y, else T_{ys} - (v - v^-1) T_y
    let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
    for (&y, a) in x {
        let yid = ElementId(y as u32);
        let ys = g.multiply(yid, g.generator(node));
        add_into(out.entry(ys.index()).or_default(), a, 1, 0);
        if g.length(ys) > g.length(yid) {
            let slot = out.entry(y).or_default();
            add_into(slot, a, -1, 1);
            add_into(slot, a, 1, -1);
        }
    }
    out.retain(|_, p| !p.is_empty());
    out
}

/// `bar(T_w)` in the T-basis for every `w`, indexed by element id.
pub fn bar_t_table(g: &WeylGroup) -> Vec<BTreeMap<usize, Poly>> {
    let mut table: Vec<BTreeMap<usize, Poly>> = Vec::with_capacity(g.order());
    for w in g.ids() {
        if w == g.identity() {
            table.push(BTreeMap::from([(w.index(), Poly::from([(0, 1)]))]));
            continue;
        }
        let node = *g.word(w).last().unwrap();
        let ws = g.multiply(w, g.generator(node));
        assert!(g.length(ws) < g.length(w));
        table.push(right_mul_inverse_gen(g, &table[ws.index()], node));
    }
    table
}

pub struct Oracle {
    pub bar_t: Vec<BTreeMap<usize, Poly>>,
    /// `h[w][y]`, nonzero entries only.
    pub h: Vec<BTreeMap<usize, Poly>>,
}

impl Oracle {
    pub fn new(g: &WeylGroup) -> Self {
        let bar_t = bar_t_table(g);
        let n = g.order();
        let mut h = Vec::with_capacity(n);
        for w in 0..n {
            let mut col: BTreeMap<usize, Poly> = BTreeMap::from([(w, Poly::from([(0, 1)]))]);
            for z in (0..w).rev() {
                // h_z - bar(h_z) = sum over y != z of bar(h_y) r_{z,y}
                let mut p = Poly::new();
                for (&y, hy) in &col {
                    if let Some(r) = bar_t[y].get(&z) {
                        let term = mul(&bar(hy), r);
                        add_into(&mut p, &term, 1, 0);
                    }
                }
                assert_eq!(bar(&p), p.iter().map(|(&e, &c)| (e, -c)).collect::<Poly>(), "rhs not antisymmetric");
                let hz: Poly = p.into_iter().filter(|&(e, _)| e < 0).collect();
                if !hz.is_empty() {
                    col.insert(z, hz);
                }
            }
            h.push(col);
        }
        Self { bar_t, h }
    }

    /// Bar involution of `sum_y x_y T_y`.
    pub fn bar_element(&self, x: &BTreeMap<usize, Poly>) -> BTreeMap<usize, Poly> {
        let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
        for (&y, a) in x {
            for (&z, r) in &self.bar_t[y] {
                add_into(out.entry(z).or_default(), &mul(&bar(a), r), 1, 0);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }
}

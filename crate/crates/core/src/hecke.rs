//! The equal-parameter Hecke algebra in the standard basis `T_w`, normalized
//! by `T_s^2 = (v - v^-1) T_s + T_e`, and its Kazhdan-Lusztig basis
//! `C_w = sum_y h(y, w) T_y`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::coxeter::{ElementId, WeylGroup};
use crate::error::KlError;
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    T,
    C,
}

/// A finite linear combination of basis elements with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    basis: Basis,
    terms: BTreeMap<ElementId, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(basis: Basis) -> Self {
        Self { basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: Basis, w: ElementId) -> Self {
        Self::monomial(basis, w, LaurentPoly::one())
    }

    pub fn monomial(basis: Basis, w: ElementId, coeff: LaurentPoly) -> Self {
        let mut x = Self::zero(basis);
        x.add_term(w, &coeff);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (ElementId, LaurentPoly)>>(basis: Basis, terms: I) -> Self {
        let mut x = Self::zero(basis);
        for (w, p) in terms {
            x.add_term(w, &p);
        }
        x
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<ElementId, LaurentPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: ElementId) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.terms.keys().copied()
    }

    /// Adds `coeff * B_w`, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: ElementId, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(p) => {
                *p += coeff;
                if p.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, coeff.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "adding elements in different bases");
        let mut out = self.clone();
        for (&w, p) in &other.terms {
            out.add_term(w, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::from(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        Self {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(&w, p)| (w, p * c))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// Specialization `v = 1`: an integer combination of group elements.
    pub fn eval_at_one(&self) -> BTreeMap<ElementId, i64> {
        self.terms
            .iter()
            .map(|(&w, p)| (w, p.eval_at_one()))
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Human-readable form such as `T[1,2] + (v^-1)T[1]`.
    pub fn render(&self, group: &WeylGroup) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let b = match self.basis {
            Basis::T => "T",
            Basis::C => "C",
        };
        let mut s = String::new();
        for (k, (&w, p)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if !p.is_one() {
                let _ = write!(s, "({p})");
            }
            let _ = write!(s, "{b}[{}]", group.format(w));
        }
        s
    }
}

/// The Hecke algebra of a Weyl group, with cached images `bar(T_w)`.
#[derive(Debug)]
pub struct HeckeAlgebra {
    group: Arc<WeylGroup>,
    bar_t: Vec<OnceLock<HeckeElement>>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        let bar_t = (0..group.order()).map(|_| OnceLock::new()).collect();
        Self { group, bar_t }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn t(&self, w: ElementId) -> HeckeElement {
        HeckeElement::basis_element(Basis::T, w)
    }

    /// `C_s = T_s + v^-1 T_e`.
    pub fn c_s(&self, node: usize) -> HeckeElement {
        let mut x = self.t(self.group.generator(node));
        x.add_term(self.group.identity(), &LaurentPoly::monomial(1, -1));
        x
    }

    /// `T_s * x`.
    pub fn t_mul_gen_left(&self, node: usize, x: &HeckeElement) -> HeckeElement {
        assert_eq!(x.basis, Basis::T);
        let g = &self.group;
        let q = LaurentPoly::v_minus_v_inv();
        let mut out = HeckeElement::zero(Basis::T);
        for (&w, a) in &x.terms {
            let sw = g.mul_gen_left(node, w);
            if g.length(sw) < g.length(w) {
                out.add_term(w, &(&q * a));
            }
            out.add_term(sw, a);
        }
        out
    }

    /// `x * T_s`.
    pub fn t_mul_gen_right(&self, x: &HeckeElement, node: usize) -> HeckeElement {
        assert_eq!(x.basis, Basis::T);
        let g = &self.group;
        let q = LaurentPoly::v_minus_v_inv();
        let mut out = HeckeElement::zero(Basis::T);
        for (&w, a) in &x.terms {
            let ws = g.mul_gen_right(w, node);
            if g.length(ws) < g.length(w) {
                out.add_term(w, &(&q * a));
            }
            out.add_term(ws, a);
        }
        out
    }

    /// `T_u * y`, expanding `u` along its cached reduced word.
    pub fn t_mul_basis_left(&self, u: ElementId, y: &HeckeElement) -> HeckeElement {
        self.group
            .word(u)
            .iter()
            .rev()
            .fold(y.clone(), |acc, &s| self.t_mul_gen_left(s, &acc))
    }

    /// `x * T_u`.
    pub fn t_mul_basis_right(&self, x: &HeckeElement, u: ElementId) -> HeckeElement {
        self.group
            .word(u)
            .iter()
            .fold(x.clone(), |acc, &s| self.t_mul_gen_right(&acc, s))
    }

    pub fn t_mul(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        assert_eq!((x.basis, y.basis), (Basis::T, Basis::T));
        let mut out = HeckeElement::zero(Basis::T);
        for (&u, a) in &x.terms {
            let prod = self.t_mul_basis_left(u, y).scale(a);
            out = out.add(&prod);
        }
        out
    }

    /// `C_s * x` for `x` in the T-basis.
    pub fn c_s_mul_left(&self, node: usize, x: &HeckeElement) -> HeckeElement {
        self.t_mul_gen_left(node, x).add(&x.scale(&LaurentPoly::monomial(1, -1)))
    }

    /// `bar(T_w) = (T_{w^-1})^-1`, memoized.
    pub fn bar_t(&self, w: ElementId) -> &HeckeElement {
        if let Some(x) = self.bar_t[w.index()].get() {
            return x;
        }
        let g = &self.group;
        let value = if w == g.identity() {
            self.t(w)
        } else {
            // bar(T_w) = T_s^-1 bar(T_{sw}) with T_s^-1 = T_s - (v - v^-1)
            let s = g.descents_left(w)[0];
            let rest = self.bar_t(g.mul_gen_left(s, w));
            self.t_mul_gen_left(s, rest)
                .sub(&rest.scale(&LaurentPoly::v_minus_v_inv()))
        };
        let _ = self.bar_t[w.index()].set(value);
        self.bar_t[w.index()].get().expect("just set")
    }

    /// The semilinear involution `sum a_w T_w -> sum bar(a_w) bar(T_w)`.
    pub fn bar_involution(&self, x: &HeckeElement) -> HeckeElement {
        assert_eq!(x.basis, Basis::T);
        let mut out = HeckeElement::zero(Basis::T);
        for (&w, a) in &x.terms {
            let ab = a.bar();
            for (&y, b) in &self.bar_t(w).terms {
                out.add_term(y, &(&ab * b));
            }
        }
        out
    }
}

/// Lazily computed Kazhdan-Lusztig basis of a group's Hecke algebra.
///
/// Column `w` holds `C_w` in the T-basis, i.e. the polynomials `h(y, w)`.
/// Each column is validated (bar-invariance, degree bounds, Bruhat support)
/// when first computed.
#[derive(Debug)]
pub struct KlTable {
    algebra: HeckeAlgebra,
    columns: Vec<OnceLock<HeckeElement>>,
}

impl KlTable {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        let columns = (0..group.order()).map(|_| OnceLock::new()).collect();
        Self { algebra: HeckeAlgebra::new(group), columns }
    }

    /// Builds every column.
    pub fn full(group: Arc<WeylGroup>) -> Result<Self, KlError> {
        let table = Self::new(group);
        table.build_all()?;
        Ok(table)
    }

    /// Seeds the table with previously exported columns, validating each one.
    pub fn from_columns(group: Arc<WeylGroup>, columns: Vec<HeckeElement>) -> Result<Self, KlError> {
        assert_eq!(columns.len(), group.order());
        let table = Self::new(group);
        for (k, c) in columns.into_iter().enumerate() {
            let w = ElementId(k as u32);
            table.validate(w, &c)?;
            let _ = table.columns[k].set(c);
        }
        Ok(table)
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.algebra.group()
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.algebra
    }

    pub fn build_all(&self) -> Result<(), KlError> {
        for w in self.group().ids() {
            self.kl_element(w)?;
        }
        Ok(())
    }

    pub fn is_computed(&self, w: ElementId) -> bool {
        self.columns[w.index()].get().is_some()
    }

    /// `C_w` in the T-basis.
    ///
    /// Uses `C_w = C_s C_{sw} - sum_{y < sw, sy < y} mu(y, sw) C_y` with `s`
    /// the smallest left descent of `w`.
    pub fn kl_element(&self, w: ElementId) -> Result<&HeckeElement, KlError> {
        if let Some(c) = self.columns[w.index()].get() {
            return Ok(c);
        }
        let g = self.group().clone();
        let value = if w == g.identity() {
            self.algebra.t(w)
        } else {
            let s = g.descents_left(w)[0];
            let u = g.mul_gen_left(s, w);
            let c_u = self.kl_element(u)?.clone();
            let mut c = self.algebra.c_s_mul_left(s, &c_u);
            for (&y, h) in c_u.terms() {
                if y == u || !g.is_left_descent(s, y) {
                    continue;
                }
                let mu = h.coefficient(-1);
                if mu != 0 {
                    let c_y = self.kl_element(y)?;
                    c = c.sub(&c_y.scale(&LaurentPoly::from(mu)));
                }
            }
            self.validate(w, &c)?;
            c
        };
        let _ = self.columns[w.index()].set(value);
        Ok(self.columns[w.index()].get().expect("just set"))
    }

    fn validate(&self, w: ElementId, c: &HeckeElement) -> Result<(), KlError> {
        let g = self.group();
        let fail = |reason: String| KlError::Validation { w: g.format(w), reason };
        if c.basis() != Basis::T {
            return Err(fail("not in the T-basis".into()));
        }
        if !c.coefficient(w).is_one() {
            return Err(fail(format!("h(w, w) = {}", c.coefficient(w))));
        }
        for (&y, h) in c.terms() {
            if y == w {
                continue;
            }
            if h.max_degree().is_some_and(|d| d >= 0) {
                return Err(fail(format!("h({}, w) = {h} has a nonnegative exponent", g.format(y))));
            }
            if !g.bruhat_leq(y, w) {
                return Err(fail(format!("support contains {} which is not Bruhat-below w", g.format(y))));
            }
        }
        if &self.algebra.bar_involution(c) != c {
            return Err(fail(format!("not bar-invariant: {}", c.render(g))));
        }
        Ok(())
    }

    /// `h(y, w)`, the coefficient of `T_y` in `C_w`.
    pub fn h(&self, y: ElementId, w: ElementId) -> Result<LaurentPoly, KlError> {
        Ok(self.kl_element(w)?.coefficient(y))
    }

    /// The coefficient of `v^-1` in `h(y, w)`; zero unless `y < w`.
    pub fn mu(&self, y: ElementId, w: ElementId) -> Result<i64, KlError> {
        if y == w {
            return Ok(0);
        }
        Ok(self.h(y, w)?.coefficient(-1))
    }

    /// Rewrites a T-basis element in the C-basis by triangular elimination,
    /// peeling off the term of largest id (hence maximal length) each step.
    pub fn expand_in_c(&self, x: &HeckeElement) -> Result<HeckeElement, KlError> {
        assert_eq!(x.basis(), Basis::T);
        let Some(top) = x.terms().keys().next_back() else {
            return Ok(HeckeElement::zero(Basis::C));
        };
        let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(); top.index() + 1];
        for (&w, p) in x.terms() {
            acc[w.index()] = p.clone();
        }
        let mut out = BTreeMap::new();
        for k in (0..acc.len()).rev() {
            if acc[k].is_zero() {
                continue;
            }
            let a = std::mem::take(&mut acc[k]);
            let w = ElementId(k as u32);
            for (&y, h) in self.kl_element(w)?.terms() {
                if y != w {
                    acc[y.index()] -= &(&a * h);
                }
            }
            out.insert(w, a);
        }
        Ok(HeckeElement { basis: Basis::C, terms: out })
    }

    /// Converts a C-basis element back to the T-basis.
    pub fn to_t(&self, x: &HeckeElement) -> Result<HeckeElement, KlError> {
        assert_eq!(x.basis(), Basis::C);
        let mut out = HeckeElement::zero(Basis::T);
        for (&w, a) in x.terms() {
            for (&y, h) in self.kl_element(w)?.terms() {
                out.add_term(y, &(a * h));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(name: &str) -> (Arc<WeylGroup>, KlTable) {
        let g = Arc::new(WeylGroup::from_name(name).unwrap());
        let t = KlTable::new(g.clone());
        (g, t)
    }

    fn vpow(k: i32) -> LaurentPoly {
        LaurentPoly::monomial(1, k)
    }

    #[test]
    fn quadratic_relation() {
        let (g, t) = setup("A1");
        let alg = t.algebra();
        let s = g.generator(1);
        let e = g.identity();
        assert_eq!(alg.t_mul_gen_left(1, &alg.t(e)), alg.t(s));
        let ss = alg.t_mul_gen_left(1, &alg.t(s));
        let expected = HeckeElement::from_terms(Basis::T, [(s, LaurentPoly::v_minus_v_inv()), (e, LaurentPoly::one())]);
        assert_eq!(ss, expected);
        assert_eq!(alg.t_mul_gen_right(&alg.t(s), 1), expected);
    }

    #[test]
    fn length_additive_products() {
        let (g, t) = setup("A2");
        let alg = t.algebra();
        let s1s2 = g.element_from_word(&[1, 2]).unwrap();
        assert_eq!(alg.t_mul(&alg.t(g.generator(1)), &alg.t(g.generator(2))), alg.t(s1s2));
    }

    #[test]
    fn c_s_times_t_s() {
        let (g, t) = setup("A1");
        let alg = t.algebra();
        let c_s = alg.c_s(1);
        let prod = alg.t_mul(&c_s, &alg.t(g.generator(1)));
        assert_eq!(prod, c_s.scale(&vpow(1)));
        let x = alg.c_s(1).add(&alg.t(g.identity()));
        assert_eq!(alg.t_mul(&x, &alg.t(g.identity())), x);
    }

    #[test]
    fn bar_examples() {
        let (g, t) = setup("A1");
        let alg = t.algebra();
        let (e, s) = (g.identity(), g.generator(1));
        assert_eq!(alg.bar_involution(&alg.t(e)), alg.t(e));
        let expected = HeckeElement::from_terms(Basis::T, [(s, LaurentPoly::one()), (e, -LaurentPoly::v_minus_v_inv())]);
        assert_eq!(alg.bar_involution(&alg.t(s)), expected);
        assert_eq!(alg.bar_involution(&alg.c_s(1)), alg.c_s(1));
    }

    #[test]
    fn kl_examples() {
        let (g, t) = setup("A2");
        let e = g.identity();
        assert_eq!(t.kl_element(e).unwrap(), &t.algebra().t(e));
        assert_eq!(t.kl_element(g.generator(1)).unwrap(), &t.algebra().c_s(1));
        let s1s2 = g.element_from_word(&[1, 2]).unwrap();
        let expected = HeckeElement::from_terms(
            Basis::T,
            [
                (s1s2, LaurentPoly::one()),
                (g.generator(1), vpow(-1)),
                (g.generator(2), vpow(-1)),
                (e, vpow(-2)),
            ],
        );
        assert_eq!(t.kl_element(s1s2).unwrap(), &expected);
        assert_eq!(t.mu(e, g.generator(1)).unwrap(), 1);
        assert_eq!(t.mu(g.generator(1), s1s2).unwrap(), 1);
        assert_eq!(t.mu(e, s1s2).unwrap(), 0);
        assert_eq!(t.mu(g.generator(2), g.generator(1)).unwrap(), 0);
    }

    #[test]
    fn expand_examples() {
        let (g, t) = setup("A2");
        let (e, s) = (g.identity(), g.generator(1));
        let alg = t.algebra();
        assert_eq!(t.expand_in_c(&alg.t(e)).unwrap(), HeckeElement::basis_element(Basis::C, e));
        let expected = HeckeElement::from_terms(Basis::C, [(s, LaurentPoly::one()), (e, LaurentPoly::monomial(-1, -1))]);
        assert_eq!(t.expand_in_c(&alg.t(s)).unwrap(), expected);
        for w in g.ids() {
            let c = t.kl_element(w).unwrap().clone();
            assert_eq!(t.expand_in_c(&c).unwrap(), HeckeElement::basis_element(Basis::C, w));
        }
        assert!(t.expand_in_c(&HeckeElement::zero(Basis::T)).unwrap().is_zero());
    }

    #[test]
    fn validation_rejects_wrong_columns() {
        let g = Arc::new(WeylGroup::from_name("A1").unwrap());
        let alg = HeckeAlgebra::new(g.clone());
        // T_s alone is not bar-invariant
        let cols = vec![alg.t(g.identity()), alg.t(g.generator(1))];
        let err = KlTable::from_columns(g.clone(), cols).unwrap_err();
        assert!(err.to_string().contains("bar-invariant"), "{err}");
        let bad = alg.t(g.generator(1)).add(&HeckeElement::monomial(Basis::T, g.identity(), LaurentPoly::one()));
        let err = KlTable::from_columns(g.clone(), vec![alg.t(g.identity()), bad]).unwrap_err();
        assert!(err.to_string().contains("nonnegative exponent"), "{err}");
    }

    #[test]
    fn render_is_readable() {
        let (g, t) = setup("A2");
        let s1s2 = g.element_from_word(&[1, 2]).unwrap();
        let c = t.kl_element(s1s2).unwrap();
        assert_eq!(c.render(&g), "T[1,2] + (v^-1)T[2] + (v^-1)T[1] + (v^-2)T[e]");
    }
}

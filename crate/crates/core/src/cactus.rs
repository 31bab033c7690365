//! The involution `sigma` read off from `C_w T_{w_0}`, the wall-crossing
//! bijections `wc_D` for connected subdiagrams `D`, and the resulting action
//! of two commuting copies of the cactus group on `W`.
//!
//! For a connected `D` and `w = w' w''` with `w'' in W_D` and `w'` minimal in
//! `w W_D`, `wc_D(w) = w' sigma_D(w'')`, where `sigma_D` is computed inside a
//! freshly built copy of `W_D` with its own Hecke algebra and cells.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cells::CellData;
use crate::coxeter::{ElementId, Parabolic, Subdiagram, WeylGroup};
use crate::error::{GroupError, KlError, SigmaError};
use crate::hecke::{HeckeElement, KlTable};

/// A group together with its full KL table and cells.
#[derive(Debug)]
pub struct GroupData {
    pub group: Arc<WeylGroup>,
    pub table: KlTable,
    pub cells: CellData,
}

impl GroupData {
    pub fn build(group: Arc<WeylGroup>) -> Result<Self, KlError> {
        Self::from_table(KlTable::full(group)?)
    }

    /// Reuses an existing (for instance cached) table.
    pub fn from_table(table: KlTable) -> Result<Self, KlError> {
        let group = table.group().clone();
        let cells = CellData::compute(&table)?;
        Ok(Self { group, table, cells })
    }
}

/// The leading coefficient `alpha = sign * v^k` of `C_{sigma(w)}` in `C_w T_{w_0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alpha {
    pub sign: i8,
    pub k: i32,
}

/// `C_w T_{w_0}` expanded in the C-basis.
pub fn right_multiply_longest(data: &GroupData, w: ElementId) -> Result<HeckeElement, KlError> {
    let c_w = data.table.kl_element(w)?;
    let prod = data.table.algebra().t_mul_basis_right(c_w, data.group.longest());
    data.table.expand_in_c(&prod)
}

/// Computes `sigma(w)` and `alpha` on the full diagram of `data.group`.
///
/// The image is the unique term of `C_w T_{w_0}` in the two-sided cell of `w`;
/// its coefficient must be a signed monomial and every other term must lie
/// strictly below `w` in the two-sided order.
pub fn sigma(data: &GroupData, w: ElementId) -> Result<(ElementId, Alpha), SigmaError> {
    let g = &data.group;
    let cd = &data.cells;
    let expansion = right_multiply_longest(data, w)?;
    let cell = cd.two_sided_id(w);
    let same: Vec<ElementId> = expansion.support().filter(|&y| cd.two_sided_id(y) == cell).collect();
    if same.len() != 1 {
        return Err(SigmaError::Ambiguity {
            w: g.format(w),
            count: same.len(),
            expansion: expansion.render(g),
        });
    }
    let image = same[0];
    let coeff = expansion.coefficient(image);
    let Some((sign, k)) = coeff.is_monomial() else {
        return Err(SigmaError::NonMonomial {
            w: g.format(w),
            image: g.format(image),
            coefficient: coeff.to_string(),
            expansion: expansion.render(g),
        });
    };
    if let Some(bad) = expansion.support().find(|&y| y != image && !cd.lr_strictly_below(y, w)) {
        return Err(SigmaError::Residual {
            w: g.format(w),
            term: g.format(bad),
            expansion: expansion.render(g),
        });
    }
    Ok((image, Alpha { sign, k }))
}

/// `sigma` and `alpha` for every element, indexed by element id.
pub fn sigma_all(data: &GroupData) -> Result<Vec<(ElementId, Alpha)>, SigmaError> {
    data.group.ids().map(|w| sigma(data, w)).collect()
}

/// A cactus generator `tau_D`; `D` must be connected.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CactusGenerator(Subdiagram);

impl CactusGenerator {
    pub fn new(sub: Subdiagram) -> Result<Self, GroupError> {
        if !sub.is_connected() {
            return Err(GroupError::NotConnected(sub.to_string()));
        }
        Ok(Self(sub))
    }

    pub fn subdiagram(&self) -> &Subdiagram {
        &self.0
    }
}

/// A word in cactus generators, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CactusWord(pub Vec<CactusGenerator>);

/// `sigma` of a parabolic subgroup, expressed on its own element ids.
#[derive(Debug)]
struct ParabolicSigma {
    parabolic: Parabolic,
    sigma: Vec<ElementId>,
}

impl ParabolicSigma {
    fn build(group: &WeylGroup, sub: &Subdiagram) -> Result<Self, SigmaError> {
        let parabolic = group.parabolic(sub)?;
        let data = GroupData::build(parabolic.group.clone())?;
        let sigma = sigma_all(&data)?.into_iter().map(|(img, _)| img).collect();
        Ok(Self { parabolic, sigma })
    }

    fn apply(&self, group: &WeylGroup, w: ElementId) -> ElementId {
        let (head, tail) = group.coset_decompose(w, &self.parabolic.sub);
        let local = self.parabolic.restrict(tail).expect("coset tail lies in the parabolic subgroup");
        group.multiply(head, self.parabolic.embed(self.sigma[local.index()]))
    }
}

/// `wc_D(w)` for a single element, building `W_D`'s structures on the fly.
pub fn wall_crossing(group: &WeylGroup, sub: &Subdiagram, w: ElementId) -> Result<ElementId, SigmaError> {
    CactusGenerator::new(sub.clone())?;
    Ok(ParabolicSigma::build(group, sub)?.apply(group, w))
}

/// Every `wc_D` as a permutation of element ids, plus `alpha` for the full diagram.
#[derive(Debug)]
pub struct WallCrossingTable {
    group: Arc<WeylGroup>,
    subdiagrams: Vec<Subdiagram>,
    perms: Vec<Vec<ElementId>>,
    alpha: Vec<Alpha>,
}

impl WallCrossingTable {
    pub fn build(data: &GroupData) -> Result<Self, SigmaError> {
        let g = data.group.clone();
        let subdiagrams = g.diagram().connected_subdiagrams();
        let mut perms = Vec::with_capacity(subdiagrams.len());
        for sub in &subdiagrams {
            let ps = ParabolicSigma::build(&g, sub)?;
            perms.push(g.ids().map(|w| ps.apply(&g, w)).collect());
        }
        let alpha = sigma_all(data)?.into_iter().map(|(_, a)| a).collect();
        Ok(Self { group: g, subdiagrams, perms, alpha })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    /// Connected subdiagrams in canonical order.
    pub fn subdiagrams(&self) -> &[Subdiagram] {
        &self.subdiagrams
    }

    pub fn permutation(&self, sub: &Subdiagram) -> Result<&[ElementId], GroupError> {
        self.subdiagrams
            .iter()
            .position(|s| s == sub)
            .map(|k| self.perms[k].as_slice())
            .ok_or_else(|| GroupError::NotConnected(sub.to_string()))
    }

    pub fn permutations(&self) -> impl Iterator<Item = (&Subdiagram, &[ElementId])> {
        self.subdiagrams.iter().zip(self.perms.iter().map(Vec::as_slice))
    }

    pub fn wc(&self, sub: &Subdiagram, w: ElementId) -> Result<ElementId, GroupError> {
        Ok(self.permutation(sub)?[w.index()])
    }

    /// `alpha` from the full-diagram `sigma` computation at `w`.
    pub fn alpha(&self, w: ElementId) -> Alpha {
        self.alpha[w.index()]
    }

    /// Applies a word of first-copy generators, rightmost letter first.
    pub fn act(&self, word: &CactusWord, w: ElementId) -> Result<ElementId, GroupError> {
        word.0.iter().rev().try_fold(w, |x, gen| self.wc(gen.subdiagram(), x))
    }

    /// The second copy: `w -> wc_D(w^-1)^-1`.
    pub fn act_second_copy(&self, sub: &Subdiagram, w: ElementId) -> Result<ElementId, GroupError> {
        let g = &self.group;
        Ok(g.inverse(self.wc(sub, g.inverse(w))?))
    }

    /// The composite of the generators of the connected components of `sub`.
    pub fn act_union(&self, sub: &Subdiagram, w: ElementId) -> Result<ElementId, GroupError> {
        let word = CactusWord(components(&self.group, sub)?);
        self.act(&word, w)
    }

    /// Orbits of the group generated by all `wc_D`, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<ElementId>> {
        let n = self.group.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for perm in &self.perms {
            for (x, y) in perm.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y.index()));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: Vec<Vec<ElementId>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(ElementId(x as u32));
        }
        out
    }
}

/// Splits a subdiagram into connected components, as cactus generators.
pub fn components(group: &WeylGroup, sub: &Subdiagram) -> Result<Vec<CactusGenerator>, GroupError> {
    let d = group.diagram();
    let mut left: Vec<usize> = sub.nodes().to_vec();
    let mut out = Vec::new();
    while let Some(&start) = left.first() {
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let x = comp[k];
            for &y in &left {
                if !comp.contains(&y) && d.bonded(x, y) {
                    comp.push(y);
                }
            }
            k += 1;
        }
        left.retain(|y| !comp.contains(y));
        out.push(CactusGenerator::new(d.subdiagram(&comp)?)?);
    }
    Ok(out)
}

/// One verified relation instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub relation: String,
    pub instance: serde_json::Value,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckRecord {
    fn new(relation: &str, instance: serde_json::Value, counterexample: Option<String>) -> Self {
        Self { relation: relation.to_string(), instance, pass: counterexample.is_none(), counterexample }
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

fn first_mismatch<F, G>(group: &WeylGroup, lhs: F, rhs: G) -> Option<String>
where
    F: Fn(ElementId) -> ElementId,
    G: Fn(ElementId) -> ElementId,
{
    group.ids().find_map(|w| {
        let (a, b) = (lhs(w), rhs(w));
        (a != b).then(|| format!("w = {}: {} vs {}", group.format(w), group.format(a), group.format(b)))
    })
}

/// Checks the defining relations of the cactus group as identities of permutations.
pub fn verify_cactus_relations(wct: &WallCrossingTable) -> Result<Vec<CheckRecord>, GroupError> {
    let g = wct.group().as_ref();
    let d = g.diagram();
    let subs = wct.subdiagrams();
    let mut out = Vec::new();
    for (sub, perm) in wct.permutations() {
        let bad = first_mismatch(g, |w| perm[perm[w.index()].index()], |w| w);
        out.push(CheckRecord::new("involution", json!({ "d1": sub.nodes() }), bad));
    }
    for (i, d1) in subs.iter().enumerate() {
        for d2 in &subs[i + 1..] {
            let union: Vec<usize> = d1.nodes().iter().chain(d2.nodes()).copied().collect();
            if d.subdiagram(&union)?.is_connected() {
                continue;
            }
            let (p1, p2) = (wct.permutation(d1)?, wct.permutation(d2)?);
            let bad = first_mismatch(g, |w| p1[p2[w.index()].index()], |w| p2[p1[w.index()].index()]);
            out.push(CheckRecord::new(
                "commute_disconnected",
                json!({ "d1": d1.nodes(), "d2": d2.nodes() }),
                bad,
            ));
        }
    }
    for d2 in subs {
        for d1 in subs {
            if d1 == d2 || !d1.is_subset_of(d2) {
                continue;
            }
            let star = g.star(d1, d2)?;
            let (p1, p2, p1s) = (wct.permutation(d1)?, wct.permutation(d2)?, wct.permutation(&star)?);
            let bad = first_mismatch(g, |w| p1[p2[w.index()].index()], |w| p2[p1s[w.index()].index()]);
            out.push(CheckRecord::new(
                "nested",
                json!({ "d1": d1.nodes(), "d2": d2.nodes(), "d1_star": star.nodes() }),
                bad,
            ));
        }
    }
    Ok(out)
}

/// Checks cell preservation, left-cell permutation and commutation of the two copies.
pub fn verify_theorem(wct: &WallCrossingTable, cd: &CellData) -> Result<Vec<CheckRecord>, GroupError> {
    let g = wct.group().as_ref();
    let mut out = Vec::new();
    for (sub, perm) in wct.permutations() {
        let inst = json!({ "d1": sub.nodes() });
        let bad = g
            .ids()
            .find(|&w| cd.right_id(perm[w.index()]) != cd.right_id(w))
            .map(|w| format!("w = {} leaves its right cell", g.format(w)));
        out.push(CheckRecord::new("preserves_right_cells", inst.clone(), bad));

        let mut bad = None;
        for cell in cd.left().cells() {
            let image: BTreeSet<ElementId> = cell.iter().map(|w| perm[w.index()]).collect();
            let target = cd.left_id(*image.iter().next().expect("cells are nonempty"));
            let target_set: BTreeSet<ElementId> = cd.left().cells()[target].iter().copied().collect();
            if image != target_set {
                bad = Some(format!("left cell of {} is not mapped onto a left cell", g.format(cell[0])));
                break;
            }
        }
        out.push(CheckRecord::new("permutes_left_cells", inst.clone(), bad));

        let bad = g
            .ids()
            .find(|&w| cd.two_sided_id(perm[w.index()]) != cd.two_sided_id(w))
            .map(|w| format!("w = {} leaves its two-sided cell", g.format(w)));
        out.push(CheckRecord::new("preserves_two_sided_cells", inst, bad));
    }
    for (d1, p1) in wct.permutations() {
        for d2 in wct.subdiagrams() {
            let second = |w: ElementId| wct.act_second_copy(d2, w).expect("stored subdiagram");
            let bad = first_mismatch(g, |w| p1[second(w).index()], |w| second(p1[w.index()]));
            out.push(CheckRecord::new(
                "copies_commute",
                json!({ "first": d1.nodes(), "second": d2.nodes() }),
                bad,
            ));
        }
    }
    Ok(out)
}

/// Recomputes every `wc_D` from independently rebuilt parabolic structures
/// and, for the full diagram, compares against `sigma` computed directly on `W`.
pub fn verify_factorization(data: &GroupData, wct: &WallCrossingTable) -> Result<Vec<CheckRecord>, SigmaError> {
    let g = data.group.as_ref();
    let mut out = Vec::new();
    for (sub, perm) in wct.permutations() {
        let induced = g.diagram().induced(sub).map_err(GroupError::from)?;
        let local = Arc::new(WeylGroup::build(induced)?);
        let local_data = GroupData::build(local.clone())?;
        let local_sigma = sigma_all(&local_data)?;
        // ambient node -> local node
        let to_local = |s: &usize| sub.nodes().iter().position(|x| x == s).map(|p| p + 1);
        let bad = g.ids().find_map(|w| {
            let (head, tail) = g.coset_decompose(w, sub);
            let tail_word: Option<Vec<usize>> = g.word(tail).iter().map(to_local).collect();
            let Some(u) = tail_word.and_then(|word| local.element_from_word(&word).ok()) else {
                return Some(format!("w = {}: coset tail {} is not in W_D", g.format(w), g.format(tail)));
            };
            let image_word: Vec<usize> =
                local.word(local_sigma[u.index()].0).iter().map(|&j| sub.nodes()[j - 1]).collect();
            let image = g.multiply(head, g.element_from_word(&image_word).expect("ambient nodes"));
            (image != perm[w.index()]).then(|| {
                format!(
                    "w = {}: stored {} vs recomputed {}",
                    g.format(w),
                    g.format(perm[w.index()]),
                    g.format(image)
                )
            })
        });
        out.push(CheckRecord::new("factorization", json!({ "d1": sub.nodes() }), bad));
    }
    let full = g.diagram().full();
    let direct = sigma_all(data)?;
    let perm = wct.permutation(&full)?;
    let bad = first_mismatch(g, |w| perm[w.index()], |w| direct[w.index()].0);
    out.push(CheckRecord::new("full_equals_sigma", json!({ "d1": full.nodes() }), bad));
    Ok(out)
}

/// Outcome of testing `C_w T_{w_D} = alpha C_{wc_D(w)} + (terms strictly LR-below w)`
/// inside the Hecke algebra of the whole group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub w: Vec<usize>,
    pub wc: Vec<usize>,
    pub coefficient: String,
    pub monomial: bool,
    pub residual_lower: bool,
}

/// Experimental: does the big-algebra analogue of `sigma` describe `wc_D` for proper `D`?
pub fn probe_big_algebra(
    data: &GroupData,
    wct: &WallCrossingTable,
    sub: &Subdiagram,
) -> Result<Vec<ProbeRecord>, SigmaError> {
    let g = data.group.as_ref();
    let w_d = g.longest_element(sub);
    let perm = wct.permutation(sub)?;
    let mut out = Vec::with_capacity(g.order());
    for w in g.ids() {
        let c_w = data.table.kl_element(w)?;
        let prod = data.table.algebra().t_mul_basis_right(c_w, w_d);
        let expansion = data.table.expand_in_c(&prod)?;
        let image = perm[w.index()];
        let coeff = expansion.coefficient(image);
        let residual_lower = expansion
            .support()
            .filter(|&y| y != image)
            .all(|y| data.cells.lr_strictly_below(y, w));
        out.push(ProbeRecord {
            w: g.word(w).to_vec(),
            wc: g.word(image).to_vec(),
            monomial: coeff.is_monomial().is_some(),
            coefficient: coeff.to_string(),
            residual_lower,
        });
    }
    Ok(out)
}

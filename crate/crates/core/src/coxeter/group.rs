use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::diagram::{DynkinDiagram, Subdiagram};
use crate::error::GroupError;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_LIMIT: usize = 200_000;

/// Index of an element in its group's canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A group element in canonical form: its permutation of the root set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    perm: Box<[u16]>,
    length: usize,
    word: Vec<usize>,
}

impl WeylElement {
    /// `perm()[r]` is the index of the image of root `r`.
    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// One reduced word, as 1-based node ids.
    pub fn word(&self) -> &[usize] {
        &self.word
    }
}

/// A finite Weyl group enumerated through its action on the root system.
///
/// Roots are stored in simple-root coordinates, positive roots first. Element
/// ids follow breadth-first order from the identity, trying generators in
/// ascending node order, so ids are deterministic and sorted by length.
#[derive(Debug)]
pub struct WeylGroup {
    diagram: DynkinDiagram,
    roots: Vec<Vec<i64>>,
    n_positive: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Box<[u16]>, u32>,
    // [node - 1][element]
    right_gen: Vec<Vec<u32>>,
    left_gen: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    longest: ElementId,
}

/// A standard parabolic subgroup built as a Weyl group in its own right.
#[derive(Debug)]
pub struct Parabolic {
    pub sub: Subdiagram,
    pub group: Arc<WeylGroup>,
    /// Parabolic element id -> ambient element id.
    embed: Vec<ElementId>,
    restrict: HashMap<ElementId, ElementId>,
}

impl Parabolic {
    pub fn embed(&self, w: ElementId) -> ElementId {
        self.embed[w.index()]
    }

    /// The parabolic id of an ambient element, if it lies in the subgroup.
    pub fn restrict(&self, w: ElementId) -> Option<ElementId> {
        self.restrict.get(&w).copied()
    }

    /// Ambient node id of a parabolic node id.
    pub fn ambient_node(&self, node: usize) -> usize {
        self.sub.nodes()[node - 1]
    }
}

fn compose(a: &[u16], b: &[u16]) -> Box<[u16]> {
    b.iter().map(|&r| a[r as usize]).collect()
}

impl WeylGroup {
    pub fn build(diagram: DynkinDiagram) -> Result<Self, GroupError> {
        Self::build_with_limit(diagram, DEFAULT_ELEMENT_LIMIT)
    }

    pub fn build_with_limit(diagram: DynkinDiagram, limit: usize) -> Result<Self, GroupError> {
        let rank = diagram.rank();
        let reflect = |i: usize, beta: &[i64]| -> Vec<i64> {
            let pairing: i64 = (0..rank).map(|j| diagram.cartan()[i][j] * beta[j]).sum();
            let mut out = beta.to_vec();
            out[i] -= pairing;
            out
        };

        let mut positive: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashMap<Vec<i64>, usize> =
            positive.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        let mut k = 0;
        while k < positive.len() {
            for i in 0..rank {
                let gamma = reflect(i, &positive[k]);
                if gamma.iter().all(|&c| c >= 0) && !seen.contains_key(&gamma) {
                    seen.insert(gamma.clone(), positive.len());
                    positive.push(gamma);
                }
            }
            k += 1;
            if positive.len() > u16::MAX as usize / 2 {
                return Err(GroupError::TooLarge { limit });
            }
        }
        let n_positive = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let root_index: HashMap<&[i64], u16> =
            roots.iter().enumerate().map(|(k, r)| (r.as_slice(), k as u16)).collect();

        let gen_perms: Vec<Box<[u16]>> = (0..rank)
            .map(|i| roots.iter().map(|r| root_index[reflect(i, r).as_slice()]).collect())
            .collect();

        let identity: Box<[u16]> = (0..roots.len() as u16).collect();
        let mut elements = vec![WeylElement { perm: identity.clone(), length: 0, word: vec![] }];
        let mut index: HashMap<Box<[u16]>, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut right_gen: Vec<Vec<u32>> = vec![Vec::new(); rank];
        let mut queue = VecDeque::from([0u32]);
        while let Some(cur) = queue.pop_front() {
            for (i, g) in gen_perms.iter().enumerate() {
                let p = compose(&elements[cur as usize].perm, g);
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= limit {
                            return Err(GroupError::TooLarge { limit });
                        }
                        let id = elements.len() as u32;
                        let mut word = elements[cur as usize].word.clone();
                        word.push(i + 1);
                        let length = word.len();
                        elements.push(WeylElement { perm: p.clone(), length, word });
                        index.insert(p, id);
                        queue.push_back(id);
                        id
                    }
                };
                right_gen[i].push(id);
            }
        }

        let left_gen: Vec<Vec<u32>> = gen_perms
            .iter()
            .map(|g| elements.iter().map(|e| index[&compose(g, &e.perm)]).collect())
            .collect();
        let inverse: Vec<u32> = elements
            .iter()
            .map(|e| {
                let mut inv = vec![0u16; e.perm.len()];
                for (r, &img) in e.perm.iter().enumerate() {
                    inv[img as usize] = r as u16;
                }
                index[inv.as_slice()]
            })
            .collect();
        let longest = elements
            .iter()
            .position(|e| e.length == n_positive)
            .map(|p| ElementId(p as u32))
            .expect("finite Weyl groups have a longest element");

        let group = Self {
            diagram,
            roots,
            n_positive,
            elements,
            index,
            right_gen,
            left_gen,
            inverse,
            longest,
        };
        debug_assert!(group.elements.iter().all(|e| group.count_inversions(&e.perm) == e.length));
        Ok(group)
    }

    pub fn from_name(name: &str) -> Result<Self, GroupError> {
        Self::build(DynkinDiagram::from_name(name)?)
    }

    fn count_inversions(&self, perm: &[u16]) -> usize {
        perm[..self.n_positive]
            .iter()
            .filter(|&&r| r as usize >= self.n_positive)
            .count()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_positive
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.elements.len() as u32).map(ElementId)
    }

    pub fn element(&self, w: ElementId) -> &WeylElement {
        &self.elements[w.index()]
    }

    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    pub fn longest(&self) -> ElementId {
        self.longest
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.elements[w.index()].length
    }

    pub fn word(&self, w: ElementId) -> &[usize] {
        &self.elements[w.index()].word
    }

    /// The simple reflection of a 1-based node.
    pub fn generator(&self, node: usize) -> ElementId {
        ElementId(self.right_gen[node - 1][0])
    }

    /// Looks up an element by its root permutation.
    pub fn lookup(&self, perm: &[u16]) -> Option<ElementId> {
        self.index.get(perm).map(|&i| ElementId(i))
    }

    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        let p = compose(&self.elements[a.index()].perm, &self.elements[b.index()].perm);
        ElementId(self.index[&p])
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        ElementId(self.inverse[w.index()])
    }

    /// `s_node * w`.
    #[inline]
    pub fn mul_gen_left(&self, node: usize, w: ElementId) -> ElementId {
        ElementId(self.left_gen[node - 1][w.index()])
    }

    /// `w * s_node`.
    #[inline]
    pub fn mul_gen_right(&self, w: ElementId, node: usize) -> ElementId {
        ElementId(self.right_gen[node - 1][w.index()])
    }

    pub fn is_left_descent(&self, node: usize, w: ElementId) -> bool {
        self.length(self.mul_gen_left(node, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: ElementId, node: usize) -> bool {
        self.length(self.mul_gen_right(w, node)) < self.length(w)
    }

    pub fn descents_left(&self, w: ElementId) -> Vec<usize> {
        (1..=self.rank()).filter(|&s| self.is_left_descent(s, w)).collect()
    }

    pub fn descents_right(&self, w: ElementId) -> Vec<usize> {
        (1..=self.rank()).filter(|&s| self.is_right_descent(w, s)).collect()
    }

    /// Product of an arbitrary (not necessarily reduced) word of 1-based node ids.
    pub fn element_from_word(&self, word: &[usize]) -> Result<ElementId, GroupError> {
        let mut w = self.identity();
        for &s in word {
            if s == 0 || s > self.rank() {
                return Err(GroupError::BadGenerator { node: s, rank: self.rank() });
            }
            w = self.mul_gen_right(w, s);
        }
        Ok(w)
    }

    /// Bruhat order via the left-descent recursion.
    pub fn bruhat_leq(&self, y: ElementId, w: ElementId) -> bool {
        let (mut y, mut w) = (y, w);
        loop {
            if y == self.identity() {
                return true;
            }
            if self.length(y) >= self.length(w) {
                return y == w;
            }
            let s = (1..=self.rank())
                .find(|&s| self.is_left_descent(s, w))
                .expect("w != e has a left descent");
            w = self.mul_gen_left(s, w);
            if self.is_left_descent(s, y) {
                y = self.mul_gen_left(s, y);
            }
        }
    }

    /// Longest element of the parabolic subgroup generated by `sub`.
    pub fn longest_element(&self, sub: &Subdiagram) -> ElementId {
        let mut w = self.identity();
        while let Some(&s) = sub.nodes().iter().find(|&&s| !self.is_right_descent(w, s)) {
            w = self.mul_gen_right(w, s);
        }
        w
    }

    /// Splits `w = w' * w''` with `w''` in the parabolic subgroup of `sub` and
    /// `w'` the minimal-length representative of the coset `w W_sub`.
    pub fn coset_decompose(&self, w: ElementId, sub: &Subdiagram) -> (ElementId, ElementId) {
        let mut head = w;
        while let Some(&s) = sub.nodes().iter().find(|&&s| self.is_right_descent(head, s)) {
            head = self.mul_gen_right(head, s);
        }
        let tail = self.multiply(self.inverse(head), w);
        (head, tail)
    }

    /// The diagram automorphism `i -> j` of `sub` with `w_sub s_i w_sub = s_j`.
    pub fn diagram_involution(&self, sub: &Subdiagram) -> Result<BTreeMap<usize, usize>, GroupError> {
        if !sub.is_connected() {
            return Err(GroupError::NotConnected(sub.to_string()));
        }
        let w = self.longest_element(sub);
        let mut map = BTreeMap::new();
        for &i in sub.nodes() {
            let conj = self.multiply(self.multiply(w, self.generator(i)), w);
            let j = sub
                .nodes()
                .iter()
                .copied()
                .find(|&j| self.generator(j) == conj)
                .ok_or_else(|| GroupError::InvolutionNotGenerator { node: i, sub: sub.to_string() })?;
            map.insert(i, j);
        }
        Ok(map)
    }

    /// Image of a subdiagram of `outer` under the involution of `outer`.
    pub fn star(&self, inner: &Subdiagram, outer: &Subdiagram) -> Result<Subdiagram, GroupError> {
        let inv = self.diagram_involution(outer)?;
        let image: Vec<usize> = inner.nodes().iter().map(|i| inv[i]).collect();
        Ok(self.diagram.subdiagram(&image)?)
    }

    /// Builds `W_sub` as an independent group over the induced Cartan matrix.
    pub fn parabolic(&self, sub: &Subdiagram) -> Result<Parabolic, GroupError> {
        let diagram = if sub.is_empty() {
            DynkinDiagram::trivial()
        } else {
            self.diagram.induced(sub)?
        };
        let group = Arc::new(WeylGroup::build(diagram)?);
        let mut embed = Vec::with_capacity(group.order());
        let mut restrict = HashMap::with_capacity(group.order());
        for u in group.ids() {
            let word: Vec<usize> = group.word(u).iter().map(|&j| sub.nodes()[j - 1]).collect();
            let w = self.element_from_word(&word)?;
            embed.push(w);
            restrict.insert(w, u);
        }
        Ok(Parabolic { sub: sub.clone(), group, embed, restrict })
    }

    /// Reduced word rendered as comma-separated node ids (`e` for the identity).
    pub fn format(&self, w: ElementId) -> String {
        format_word(self.word(w))
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

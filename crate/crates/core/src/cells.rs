//! Left, right and two-sided Kazhdan-Lusztig cells.
//!
//! The left preorder is generated by the edges `y -> w` whenever `C_y`
//! occurs in `T_s C_w` for some simple reflection `s`; the right preorder is
//! its conjugate under inversion and the two-sided preorder is generated by
//! both edge sets. Cells are the strongly connected components.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxeter::{ElementId, WeylGroup};
use crate::error::KlError;
use crate::hecke::KlTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Left => "left",
            CellKind::Right => "right",
            CellKind::TwoSided => "two_sided",
        })
    }
}

/// A partition of `W` into cells together with the induced order on cells.
///
/// Cell ids are a topological order of the condensation read from the top
/// (the cell of the identity is 0), ties broken by smallest member id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    id: Vec<usize>,
    members: Vec<Vec<ElementId>>,
    /// `(a, b)`: some element of cell `a` is a generating predecessor of cell `b`.
    edges: BTreeSet<(usize, usize)>,
    /// `below[a][b]`: cell `a` lies strictly below cell `b`.
    below: Vec<Vec<bool>>,
}

impl CellPartition {
    /// Condenses the preorder generated by `edges` (`(y, w)` meaning `y <= w`).
    pub fn from_edges(n: usize, edges: &[(ElementId, ElementId)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(y, w) in edges {
            adj[y.index()].push(w.index());
        }
        let raw = tarjan(&adj);
        let n_comp = raw.iter().copied().max().map_or(0, |m| m + 1);

        let mut min_member = vec![usize::MAX; n_comp];
        for (v, &c) in raw.iter().enumerate() {
            min_member[c] = min_member[c].min(v);
        }
        // upper -> lower adjacency on components
        let mut down: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_comp];
        let mut indeg = vec![0usize; n_comp];
        for &(y, w) in edges {
            let (cy, cw) = (raw[y.index()], raw[w.index()]);
            if cy != cw && down[cw].insert(cy) {
                indeg[cy] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n_comp)
            .filter(|&c| indeg[c] == 0)
            .map(|c| Reverse((min_member[c], c)))
            .collect();
        let mut relabel = vec![usize::MAX; n_comp];
        let mut next = 0;
        while let Some(Reverse((_, c))) = heap.pop() {
            relabel[c] = next;
            next += 1;
            for &d in &down[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    heap.push(Reverse((min_member[d], d)));
                }
            }
        }
        assert_eq!(next, n_comp, "condensation must be acyclic");

        let id: Vec<usize> = raw.iter().map(|&c| relabel[c]).collect();
        let mut members = vec![Vec::new(); n_comp];
        for (v, &c) in id.iter().enumerate() {
            members[c].push(ElementId(v as u32));
        }
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n_comp];
        let mut cell_edges = BTreeSet::new();
        for (c, ds) in down.iter().enumerate() {
            for &d in ds {
                cell_edges.insert((relabel[d], relabel[c]));
                up[relabel[d]].push(relabel[c]);
            }
        }
        let below = (0..n_comp)
            .map(|a| {
                let mut seen = vec![false; n_comp];
                let mut stack = up[a].clone();
                while let Some(b) = stack.pop() {
                    if !seen[b] {
                        seen[b] = true;
                        stack.extend(up[b].iter().copied());
                    }
                }
                seen
            })
            .collect();
        Self { id, members, edges: cell_edges, below }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn cell_of(&self, w: ElementId) -> usize {
        self.id[w.index()]
    }

    pub fn ids(&self) -> &[usize] {
        &self.id
    }

    pub fn cells(&self) -> &[Vec<ElementId>] {
        &self.members
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Whether cell `a` is strictly below cell `b`.
    pub fn strictly_below(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }

    /// The cells as a set of sets, for comparing partitions irrespective of ids.
    pub fn as_sets(&self) -> BTreeSet<BTreeSet<ElementId>> {
        self.members.iter().map(|c| c.iter().copied().collect()).collect()
    }
}

/// Iterative Tarjan; returns an arbitrary component index per vertex.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut n_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let u = adj[v][top.1];
                top.1 += 1;
                if index[u] == usize::MAX {
                    index[u] = next_index;
                    low[u] = next_index;
                    next_index += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let x = stack.pop().expect("tarjan stack");
                        on_stack[x] = false;
                        comp[x] = n_comp;
                        if x == v {
                            break;
                        }
                    }
                    n_comp += 1;
                }
            }
        }
    }
    comp
}

/// The three cell partitions of a Weyl group.
#[derive(Clone, Debug)]
pub struct CellData {
    group: Arc<WeylGroup>,
    left: CellPartition,
    right: CellPartition,
    two_sided: CellPartition,
}

impl CellData {
    pub fn compute(table: &KlTable) -> Result<Self, KlError> {
        let g = table.group().clone();
        let alg = table.algebra();
        let mut left_edges = Vec::new();
        for w in g.ids() {
            let c_w = table.kl_element(w)?;
            for s in 1..=g.rank() {
                let prod = table.expand_in_c(&alg.t_mul_gen_left(s, c_w))?;
                left_edges.extend(prod.support().filter(|&y| y != w).map(|y| (y, w)));
            }
        }
        left_edges.sort();
        left_edges.dedup();
        let right_edges: Vec<(ElementId, ElementId)> =
            left_edges.iter().map(|&(y, w)| (g.inverse(y), g.inverse(w))).collect();
        let both: Vec<(ElementId, ElementId)> =
            left_edges.iter().chain(right_edges.iter()).copied().collect();
        let n = g.order();
        Ok(Self {
            left: CellPartition::from_edges(n, &left_edges),
            right: CellPartition::from_edges(n, &right_edges),
            two_sided: CellPartition::from_edges(n, &both),
            group: g,
        })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn partition(&self, kind: CellKind) -> &CellPartition {
        match kind {
            CellKind::Left => &self.left,
            CellKind::Right => &self.right,
            CellKind::TwoSided => &self.two_sided,
        }
    }

    pub fn left(&self) -> &CellPartition {
        &self.left
    }

    pub fn right(&self) -> &CellPartition {
        &self.right
    }

    pub fn two_sided(&self) -> &CellPartition {
        &self.two_sided
    }

    pub fn left_id(&self, w: ElementId) -> usize {
        self.left.cell_of(w)
    }

    pub fn right_id(&self, w: ElementId) -> usize {
        self.right.cell_of(w)
    }

    pub fn two_sided_id(&self, w: ElementId) -> usize {
        self.two_sided.cell_of(w)
    }

    /// `a` lies in a two-sided cell strictly below that of `b`.
    pub fn lr_strictly_below(&self, a: ElementId, b: ElementId) -> bool {
        let (ca, cb) = (self.two_sided_id(a), self.two_sided_id(b));
        ca != cb && self.two_sided.strictly_below(ca, cb)
    }
}

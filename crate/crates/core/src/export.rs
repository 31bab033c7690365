//! Serializable views of the computed structures. Elements are written as
//! reduced words of 1-based node ids; the identity is the empty word.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cactus::{Alpha, WallCrossingTable};
use crate::cells::{CellData, CellKind};
use crate::coxeter::{ElementId, Subdiagram, WeylGroup};
use crate::error::{GroupError, KlError};
use crate::hecke::{Basis, HeckeElement, KlTable};
use crate::laurent::{LaurentPoly, ParsePolyError};

/// One nonzero entry `h(y, w)` of a KL table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlRecord {
    pub y: Vec<usize>,
    pub w: Vec<usize>,
    pub h: String,
    pub mu: i64,
}

#[derive(Debug, Error)]
pub enum ImportError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] ParsePolyError),
    #[error(transparent)]
    Kl(#[from] KlError),
    #[error("record for y = {y:?}, w = {w:?}: word is not reduced")]
    NotReduced { y: Vec<usize>, w: Vec<usize> },
}

/// All nonzero `h(y, w)`, ordered by `w` then `y` (element id order).
pub fn kl_records(table: &KlTable) -> Result<Vec<KlRecord>, KlError> {
    let g = table.group();
    let mut out = Vec::new();
    for w in g.ids() {
        for (&y, h) in table.kl_element(w)?.terms() {
            out.push(KlRecord {
                y: g.word(y).to_vec(),
                w: g.word(w).to_vec(),
                h: h.to_string(),
                mu: if y == w { 0 } else { h.coefficient(-1) },
            });
        }
    }
    Ok(out)
}

/// Rebuilds a full table from exported records; every column is revalidated.
pub fn kl_table_from_records(group: Arc<WeylGroup>, records: &[KlRecord]) -> Result<KlTable, ImportError> {
    let mut columns: Vec<HeckeElement> = (0..group.order()).map(|_| HeckeElement::zero(Basis::T)).collect();
    for r in records {
        let y = group.element_from_word(&r.y)?;
        let w = group.element_from_word(&r.w)?;
        if group.length(y) != r.y.len() || group.length(w) != r.w.len() {
            return Err(ImportError::NotReduced { y: r.y.clone(), w: r.w.clone() });
        }
        let h: LaurentPoly = r.h.parse()?;
        columns[w.index()].add_term(y, &h);
    }
    Ok(KlTable::from_columns(group, columns)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsExport {
    pub kind: CellKind,
    pub cells: Vec<Vec<Vec<usize>>>,
    /// `[a, b]`: cell `a` lies directly below cell `b` in the condensation.
    pub order: Vec<[usize; 2]>,
}

pub fn cells_export(cd: &CellData, kind: CellKind) -> CellsExport {
    let g = cd.group();
    let p = cd.partition(kind);
    CellsExport {
        kind,
        cells: p.cells().iter().map(|c| c.iter().map(|&w| g.word(w).to_vec()).collect()).collect(),
        order: p.edges().iter().map(|&(a, b)| [a, b]).collect(),
    }
}

/// Graphviz rendering of the condensation, edges pointing downwards.
pub fn cells_dot(cd: &CellData, kind: CellKind) -> String {
    let g = cd.group();
    let p = cd.partition(kind);
    let mut s = format!("digraph {kind}_cells {{\n  rankdir=TB;\n");
    for (k, cell) in p.cells().iter().enumerate() {
        let label: Vec<String> = cell.iter().map(|&w| g.format(w)).collect();
        let _ = writeln!(s, "  c{k} [label=\"{k}: {}\"];", label.join(" | "));
    }
    for &(a, b) in p.edges() {
        let _ = writeln!(s, "  c{b} -> c{a};");
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WcExport {
    pub subdiagram: Vec<usize>,
    pub permutation: Vec<[Vec<usize>; 2]>,
    /// Present for the full diagram only, aligned with `permutation`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Alpha>>,
}

pub fn wc_export(
    wct: &WallCrossingTable,
    sub: &Subdiagram,
    only: Option<ElementId>,
) -> Result<WcExport, GroupError> {
    let g = wct.group();
    let perm = wct.permutation(sub)?;
    let ids: Vec<ElementId> = match only {
        Some(w) => vec![w],
        None => g.ids().collect(),
    };
    let full = sub == &g.diagram().full();
    Ok(WcExport {
        subdiagram: sub.nodes().to_vec(),
        permutation: ids.iter().map(|&w| [g.word(w).to_vec(), g.word(perm[w.index()]).to_vec()]).collect(),
        alpha: full.then(|| ids.iter().map(|&w| wct.alpha(w)).collect()),
    })
}

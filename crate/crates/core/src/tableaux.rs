//! Row-insertion RSK, Schützenberger evacuation and Knuth moves, with a
//! bridge between type-A Weyl group elements and one-line permutations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{ElementId, WeylGroup};
use crate::error::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("not a permutation of 1..{n}: {word:?}")]
    NotPermutation { n: usize, word: Vec<u32> },
    #[error("not a standard Young tableau: {0}")]
    NotStandard(String),
    #[error("insertion and recording tableaux have different shapes")]
    ShapeMismatch,
    #[error("group {0} is not of type A")]
    NotTypeA(String),
}

/// A standard Young tableau in English notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let bad = |why: &str| TableauError::NotStandard(format!("{why} in {rows:?}"));
        if rows.iter().any(Vec::is_empty) {
            return Err(bad("empty row"));
        }
        if rows.windows(2).any(|p| p[0].len() < p[1].len()) {
            return Err(bad("row lengths increase"));
        }
        for row in &rows {
            if row.windows(2).any(|p| p[0] >= p[1]) {
                return Err(bad("row not increasing"));
            }
        }
        for pair in rows.windows(2) {
            if pair[1].iter().zip(&pair[0]).any(|(lo, hi)| lo <= hi) {
                return Err(bad("column not increasing"));
            }
        }
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(bad("entries are not 1..n"));
            }
            seen[x] = true;
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Aligned text grid, one row per line.
    pub fn grid(&self) -> String {
        let width = self.size().to_string().len();
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| format!("{x:>width$}")).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl TryFrom<Vec<Vec<u32>>> for Tableau {
    type Error = TableauError;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self, Self::Error> {
        Self::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<u32>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grid())
    }
}

/// Insertion tableau `p` and recording tableau `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RskPair {
    pub p: Tableau,
    pub q: Tableau,
}

fn check_permutation(word: &[u32]) -> Result<(), TableauError> {
    let n = word.len();
    let mut seen = vec![false; n + 1];
    for &x in word {
        let x = x as usize;
        if x == 0 || x > n || seen[x] {
            return Err(TableauError::NotPermutation { n, word: word.to_vec() });
        }
        seen[x] = true;
    }
    Ok(())
}

/// Row-insertion RSK of the one-line word `(w(1), ..., w(n))`.
pub fn rsk(word: &[u32]) -> Result<RskPair, TableauError> {
    check_permutation(word)?;
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for (step, &x) in word.iter().enumerate() {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![step as u32 + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(c) => {
                    std::mem::swap(&mut p[r][c], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(step as u32 + 1);
                    break;
                }
            }
        }
    }
    Ok(RskPair { p: Tableau { rows: p }, q: Tableau { rows: q } })
}

/// Inverse of [`rsk`].
pub fn rsk_inverse(pair: &RskPair) -> Result<Vec<u32>, TableauError> {
    if pair.p.shape() != pair.q.shape() {
        return Err(TableauError::ShapeMismatch);
    }
    let n = pair.p.size();
    let mut p = pair.p.rows.clone();
    let mut q = pair.q.rows.clone();
    let mut word = vec![0u32; n];
    for k in (1..=n as u32).rev() {
        let r = q
            .iter()
            .position(|row| row.last() == Some(&k))
            .ok_or_else(|| TableauError::NotStandard(format!("{k} is not at a corner of Q")))?;
        q[r].pop();
        let mut x = p[r].pop().expect("same shape");
        for row in p[..r].iter_mut().rev() {
            let c = row.iter().rposition(|&y| y < x).expect("column strictness");
            std::mem::swap(&mut row[c], &mut x);
        }
        if q[r].is_empty() {
            q.pop();
            p.pop();
        }
        word[k as usize - 1] = x;
    }
    Ok(word)
}

/// Schützenberger evacuation: repeatedly delete the smallest entry, slide the
/// hole out by jeu de taquin and label the vacated box `n, n-1, ..., 1`.
pub fn evacuation(t: &Tableau) -> Tableau {
    let n = t.size() as u32;
    let mut cur = t.rows.clone();
    let mut out: Vec<Vec<u32>> = t.rows.iter().map(|r| vec![0; r.len()]).collect();
    for step in 0..n {
        let (mut r, mut c) = (0usize, 0usize);
        loop {
            let right = cur[r].get(c + 1).copied();
            let below = cur.get(r + 1).and_then(|row| row.get(c)).copied();
            let (nr, nc) = match (right, below) {
                (None, None) => break,
                (Some(_), None) => (r, c + 1),
                (None, Some(_)) => (r + 1, c),
                (Some(a), Some(b)) => {
                    if a < b {
                        (r, c + 1)
                    } else {
                        (r + 1, c)
                    }
                }
            };
            cur[r][c] = cur[nr][nc];
            (r, c) = (nr, nc);
        }
        cur[r].pop();
        if cur[r].is_empty() {
            cur.pop();
        }
        out[r][c] = n - step;
    }
    Tableau { rows: out }
}

/// Whether `a` and `b` differ by one elementary Knuth move
/// (`xzy <-> zxy` or `yxz <-> yzx` with `x < y < z`, in adjacent positions).
pub fn knuth_related(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    let [j, j1] = diff.as_slice() else {
        return false;
    };
    let (j, j1) = (*j, *j1);
    if j1 != j + 1 || a[j] != b[j1] || a[j1] != b[j] {
        return false;
    }
    let (lo, hi) = (a[j].min(a[j1]), a[j].max(a[j1]));
    let between = |y: u32| lo < y && y < hi;
    a.get(j + 2).is_some_and(|&y| between(y)) || (j > 0 && between(a[j - 1]))
}

/// How a type-A element is turned into a one-line word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneLineConvention {
    /// `s_{i1} ... s_{ik}` maps to `t_{i1} o ... o t_{ik}` (rightmost acts first),
    /// so right multiplication by `s_i` swaps positions `i, i+1`.
    Composition,
    /// The inverse of `Composition`: right multiplication swaps values.
    Inverse,
}

/// Fixed by the acceptance check `Q(sigma(w)) = evacuation(Q(w))`.
pub const ONE_LINE_CONVENTION: OneLineConvention = OneLineConvention::Composition;

/// `n` if `g` is of type `A_{n-1}`.
pub fn type_a_degree(g: &WeylGroup) -> Result<usize, TableauError> {
    let d = g.diagram();
    let r = d.rank();
    let is_path = (1..=r).all(|i| {
        (1..=r).all(|j| {
            let expected = if i == j {
                2
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
            d.entry(i, j) == expected
        })
    });
    if r == 0 || !is_path {
        return Err(TableauError::NotTypeA(d.label()));
    }
    Ok(r + 1)
}

pub fn weyl_to_oneline_with(
    g: &WeylGroup,
    w: ElementId,
    convention: OneLineConvention,
) -> Result<Vec<u32>, TableauError> {
    let n = type_a_degree(g)?;
    let mut a: Vec<u32> = (1..=n as u32).collect();
    for &s in g.word(w) {
        a.swap(s - 1, s);
    }
    Ok(match convention {
        OneLineConvention::Composition => a,
        OneLineConvention::Inverse => invert(&a),
    })
}

pub fn weyl_to_oneline(g: &WeylGroup, w: ElementId) -> Result<Vec<u32>, TableauError> {
    weyl_to_oneline_with(g, w, ONE_LINE_CONVENTION)
}

#[derive(Debug, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Inverse of [`weyl_to_oneline`].
pub fn oneline_to_weyl(g: &WeylGroup, word: &[u32]) -> Result<ElementId, BridgeError> {
    let n = type_a_degree(g)?;
    check_permutation(word)?;
    if word.len() != n {
        return Err(TableauError::NotPermutation { n, word: word.to_vec() }.into());
    }
    let mut a = match ONE_LINE_CONVENTION {
        OneLineConvention::Composition => word.to_vec(),
        OneLineConvention::Inverse => invert(word),
    };
    // bubble sort; each swap at positions (i, i+1) strips a right factor s_i
    let mut stripped = Vec::new();
    while let Some(i) = (0..n - 1).find(|&i| a[i] > a[i + 1]) {
        a.swap(i, i + 1);
        stripped.push(i + 1);
    }
    stripped.reverse();
    Ok(g.element_from_word(&stripped)?)
}

fn invert(a: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize - 1] = i as u32 + 1;
    }
    inv
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every standard Young tableau of the given shape, by placing `1..n` in turn.
pub fn standard_tableaux_of_shape(shape: &[usize]) -> Vec<Tableau> {
    fn go(shape: &[usize], rows: &mut Vec<Vec<u32>>, next: u32, n: u32, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            let fits = len < shape[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next);
                go(shape, rows, next + 1, n, out);
                rows[r].pop();
            }
        }
    }
    let n: usize = shape.iter().sum();
    let mut out = Vec::new();
    go(shape, &mut vec![Vec::new(); shape.len()], 1, n as u32, &mut out);
    out
}

/// Every standard Young tableau with `n` boxes.
pub fn standard_tableaux(n: usize) -> Vec<Tableau> {
    partitions(n).iter().flat_map(|s| standard_tableaux_of_shape(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[u32]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rsk_examples() {
        let id = rsk(&[1, 2, 3]).unwrap();
        assert_eq!((id.p.clone(), id.q.clone()), (t(&[&[1, 2, 3]]), t(&[&[1, 2, 3]])));
        let rev = rsk(&[3, 2, 1]).unwrap();
        assert_eq!(rev.p, t(&[&[1], &[2], &[3]]));
        assert_eq!(rev.q, t(&[&[1], &[2], &[3]]));
        let x = rsk(&[2, 3, 1]).unwrap();
        assert_eq!(x.p, t(&[&[1, 3], &[2]]));
        assert_eq!(x.q, t(&[&[1, 2], &[3]]));
        assert_eq!(rsk_inverse(&x).unwrap(), vec![2, 3, 1]);
        assert!(rsk(&[1, 1, 2]).is_err());
        assert!(rsk(&[0, 1]).is_err());
        assert!(rsk(&[1, 4]).is_err());
    }

    #[test]
    fn rsk_inverse_rejects_mismatch() {
        let pair = RskPair { p: t(&[&[1, 2]]), q: t(&[&[1], &[2]]) };
        assert_eq!(rsk_inverse(&pair), Err(TableauError::ShapeMismatch));
    }

    #[test]
    fn tableau_validation() {
        assert!(Tableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(Tableau::new(vec![vec![1, 2], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![2, 3], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![1, 4]]).is_err());
        let json = serde_json::to_string(&t(&[&[1, 3], &[2]])).unwrap();
        assert_eq!(json, "[[1,3],[2]]");
        assert!(serde_json::from_str::<Tableau>("[[2,1]]").is_err());
    }

    #[test]
    fn evacuation_examples() {
        let row = t(&[&[1, 2, 3, 4]]);
        assert_eq!(evacuation(&row), row);
        let (a, b) = (t(&[&[1, 2], &[3]]), t(&[&[1, 3], &[2]]));
        assert_eq!(evacuation(&a), b);
        assert_eq!(evacuation(&b), a);
        for hook in standard_tableaux_of_shape(&[3, 1, 1]) {
            assert_eq!(evacuation(&evacuation(&hook)), hook);
        }
    }

    #[test]
    fn knuth_examples() {
        assert!(!knuth_related(&[2, 1, 3], &[2, 1, 3]));
        assert!(knuth_related(&[2, 1, 3], &[2, 3, 1]));
        assert!(knuth_related(&[1, 3, 2], &[3, 1, 2]));
        assert!(!knuth_related(&[1, 2, 3], &[3, 2, 1]));
        assert!(!knuth_related(&[1, 2, 3], &[2, 1, 3]));
        assert!(!knuth_related(&[1, 2], &[1, 2, 3]));
    }

    #[test]
    fn bridge_examples() {
        let g = WeylGroup::from_name("A2").unwrap();
        assert_eq!(weyl_to_oneline(&g, g.identity()).unwrap(), vec![1, 2, 3]);
        assert_eq!(weyl_to_oneline(&g, g.generator(1)).unwrap(), vec![2, 1, 3]);
        let s1s2 = g.element_from_word(&[1, 2]).unwrap();
        let word = weyl_to_oneline(&g, s1s2).unwrap();
        assert_eq!(word, vec![2, 3, 1]);
        let pair = rsk(&word).unwrap();
        assert_ne!(pair.p, pair.q);
        for w in g.ids() {
            let word = weyl_to_oneline(&g, w).unwrap();
            assert_eq!(oneline_to_weyl(&g, &word).unwrap(), w);
        }
        let b2 = WeylGroup::from_name("B2").unwrap();
        assert!(weyl_to_oneline(&b2, b2.identity()).is_err());
        assert!(oneline_to_weyl(&g, &[1, 2]).is_err());
    }

    #[test]
    fn counts() {
        let np: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(np, vec![1, 2, 3, 5, 7, 11]);
        // number of involutions in S_n
        let nsyt: Vec<usize> = (1..=6).map(|n| standard_tableaux(n).len()).collect();
        assert_eq!(nsyt, vec![1, 2, 4, 10, 26, 76]);
    }
}

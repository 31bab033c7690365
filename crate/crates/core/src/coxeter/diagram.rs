use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

/// A finite-type crystallographic Dynkin diagram given by its Cartan matrix.
///
/// Nodes are labelled `1..=rank`. The matrix follows the convention
/// `a_ij = <alpha_i^vee, alpha_j>`, so `s_i(alpha_j) = alpha_j - a_ij alpha_i`.
/// Named types use Bourbaki numbering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    cartan: Vec<Vec<i64>>,
    name: Option<String>,
}

/// A set of nodes of an ambient diagram, stored sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subdiagram {
    nodes: Vec<usize>,
    connected: bool,
}

impl DynkinDiagram {
    /// Parses a type string such as `A3`, `B2`, `G2` or `E6`.
    pub fn from_name(name: &str) -> Result<Self, DiagramError> {
        let bad = || DiagramError::UnknownType(name.to_string());
        let mut chars = name.chars();
        let family = chars.next().ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty()
            || !digits.chars().all(|c| c.is_ascii_digit())
            || digits.starts_with('0')
        {
            return Err(bad());
        }
        let n: usize = digits.parse().map_err(|_| bad())?;
        let cartan = match (family, n) {
            ('A', n) if n >= 1 => path_cartan(n),
            ('B', n) if n >= 2 => {
                let mut a = path_cartan(n);
                a[n - 1][n - 2] = -2;
                a
            }
            ('C', n) if n >= 2 => {
                let mut a = path_cartan(n);
                a[n - 2][n - 1] = -2;
                a
            }
            ('D', n) if n >= 4 => {
                let mut a = path_cartan(n - 1);
                grow(&mut a);
                // node n hangs off node n - 2
                bond(&mut a, n - 3, n - 1, -1, -1);
                a
            }
            ('E', n @ 6..=8) => {
                let mut a = identity2(n);
                bond(&mut a, 0, 2, -1, -1);
                bond(&mut a, 1, 3, -1, -1);
                for i in 2..n - 1 {
                    bond(&mut a, i, i + 1, -1, -1);
                }
                a
            }
            ('F', 4) => {
                let mut a = path_cartan(4);
                a[2][1] = -2;
                a
            }
            ('G', 2) => vec![vec![2, -3], vec![-1, 2]],
            _ => return Err(bad()),
        };
        let mut d = Self::from_cartan(cartan)?;
        d.name = Some(name.to_string());
        Ok(d)
    }

    /// Validates an explicit Cartan matrix.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, DiagramError> {
        let n = cartan.len();
        if n == 0 {
            return Err(DiagramError::Empty);
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(DiagramError::NotSquare { row: i + 1, len: row.len(), expected: n });
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(DiagramError::BadDiagonal { node: i + 1, value: a });
                }
                if i != j && (a > 0 || ((a == 0) != (cartan[j][i] == 0))) {
                    return Err(DiagramError::BadOffDiagonal { i: i + 1, j: j + 1 });
                }
            }
        }
        // finite type <=> every principal minor is positive
        for mask in 1u64..(1u64 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let det = determinant(&idx, &cartan);
            if det <= 0 {
                return Err(DiagramError::NotFiniteType {
                    minor: idx.iter().map(|i| i + 1).collect(),
                    determinant: det,
                });
            }
        }
        Ok(Self { cartan, name: None })
    }

    /// The rank-zero diagram of the trivial group.
    pub fn trivial() -> Self {
        Self { cartan: Vec::new(), name: None }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn nodes(&self) -> Vec<usize> {
        (1..=self.rank()).collect()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Entry `a_ij` for 1-based node ids.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The name if known, otherwise a rendering of the Cartan matrix.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("{:?}", self.cartan),
        }
    }

    pub fn bonded(&self, i: usize, j: usize) -> bool {
        i != j && self.entry(i, j) != 0
    }

    /// Number of lines joining `i` and `j` (0 to 3).
    pub fn bond_multiplicity(&self, i: usize, j: usize) -> i64 {
        if i == j {
            0
        } else {
            self.entry(i, j) * self.entry(j, i)
        }
    }

    /// Builds the subdiagram on `nodes`, sorting and deduplicating them.
    pub fn subdiagram(&self, nodes: &[usize]) -> Result<Subdiagram, DiagramError> {
        let mut ns: Vec<usize> = nodes.to_vec();
        ns.sort_unstable();
        ns.dedup();
        if let Some(&bad) = ns.iter().find(|&&i| i == 0 || i > self.rank()) {
            return Err(DiagramError::UnknownNode { node: bad, rank: self.rank() });
        }
        let connected = self.is_connected(&ns);
        Ok(Subdiagram { nodes: ns, connected })
    }

    pub fn full(&self) -> Subdiagram {
        self.subdiagram(&self.nodes()).expect("all nodes are valid")
    }

    fn is_connected(&self, nodes: &[usize]) -> bool {
        if nodes.is_empty() {
            return false;
        }
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for (m, &j) in nodes.iter().enumerate() {
                if !seen[m] && self.bonded(nodes[k], j) {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Every nonempty connected node set, ordered by size then lexicographically.
    pub fn connected_subdiagrams(&self) -> Vec<Subdiagram> {
        let n = self.rank();
        let mut out: Vec<Subdiagram> = (1u64..(1u64 << n))
            .map(|mask| (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect::<Vec<_>>())
            .filter(|ns| self.is_connected(ns))
            .map(|ns| Subdiagram { nodes: ns, connected: true })
            .collect();
        out.sort_by(|a, b| a.nodes.len().cmp(&b.nodes.len()).then_with(|| a.nodes.cmp(&b.nodes)));
        out
    }

    /// Cartan matrix of the subdiagram, with its nodes relabelled `1..=k` in order.
    pub fn induced(&self, sub: &Subdiagram) -> Result<DynkinDiagram, DiagramError> {
        let cartan = sub
            .nodes
            .iter()
            .map(|&i| sub.nodes.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        Self::from_cartan(cartan)
    }
}

impl FromStr for DynkinDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_name(s)
    }
}

impl Subdiagram {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subdiagram) -> bool {
        self.nodes.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for Subdiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.nodes.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn identity2(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect()
}

fn path_cartan(n: usize) -> Vec<Vec<i64>> {
    let mut a = identity2(n);
    for i in 0..n.saturating_sub(1) {
        bond(&mut a, i, i + 1, -1, -1);
    }
    a
}

fn grow(a: &mut Vec<Vec<i64>>) {
    let n = a.len();
    for row in a.iter_mut() {
        row.push(0);
    }
    let mut last = vec![0; n + 1];
    last[n] = 2;
    a.push(last);
}

fn bond(a: &mut [Vec<i64>], i: usize, j: usize, aij: i64, aji: i64) {
    a[i][j] = aij;
    a[j][i] = aji;
}

/// Exact determinant of the principal submatrix on `idx` (Bareiss elimination).
fn determinant(idx: &[usize], a: &[Vec<i64>]) -> i128 {
    let k = idx.len();
    let mut m: Vec<Vec<i128>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| a[i][j] as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

//! Finite and untwisted affine Dynkin diagrams, and recognition of finite
//! components by Coxeter-graph isomorphism.
//!
//! `B_n` and `C_n` share a Coxeter graph and degree list, so the catalog keeps
//! a single `B` entry for both.

use std::fmt;

use super::CartanMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Untwisted affine diagrams `X~_l` (rank `l + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Bond list `(i, j, bond)` of a diagram on vertices `0..n`.
type Bonds = Vec<(usize, usize, u8)>;

fn path(n: usize) -> Bonds {
    (1..n).map(|i| (i - 1, i, 1)).collect()
}

fn with_bond(mut bonds: Bonds, i: usize, j: usize, b: u8) -> Bonds {
    match bonds.iter_mut().find(|e| (e.0, e.1) == (i, j) || (e.0, e.1) == (j, i)) {
        Some(e) => e.2 = b,
        None => bonds.push((i, j, b)),
    }
    bonds
}

/// Star with a center (vertex 0) and arms of the given lengths.
fn star(arms: &[usize]) -> (usize, Bonds) {
    let mut bonds = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            bonds.push((prev, next, 1));
            prev = next;
            next += 1;
        }
    }
    (next, bonds)
}

fn from_bond_list(n: usize, bonds: &Bonds) -> CartanMatrix {
    let mut table = vec![0u8; n * n];
    for &(i, j, b) in bonds {
        table[i * n + j] = b;
        table[j * n + i] = b;
    }
    CartanMatrix::from_bonds(n, |i, j| table[i * n + j])
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 => 4,
            FiniteType::G2 => 2,
        }
    }

    /// Degrees of the basic invariants.
    pub fn degrees(self) -> Vec<u32> {
        match self {
            FiniteType::A(n) => (2..=n as u32 + 1).collect(),
            FiniteType::B(n) => (1..=n as u32).map(|k| 2 * k).collect(),
            FiniteType::D(n) => {
                let mut d: Vec<u32> = (1..n as u32).map(|k| 2 * k).collect();
                d.push(n as u32);
                d.sort_unstable();
                d
            }
            FiniteType::E6 => vec![2, 5, 6, 8, 9, 12],
            FiniteType::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            FiniteType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            FiniteType::F4 => vec![2, 6, 8, 12],
            FiniteType::G2 => vec![2, 6],
        }
    }

    /// Complex dimension of the flag variety: number of positive roots.
    pub fn dimension(self) -> u64 {
        self.degrees().iter().map(|&d| d as u64 - 1).sum()
    }

    fn bonds(self) -> (usize, Bonds) {
        match self {
            FiniteType::A(n) => (n, path(n)),
            FiniteType::B(n) => (n, with_bond(path(n), n - 2, n - 1, 2)),
            FiniteType::D(n) => star(&[1, 1, n - 3]),
            FiniteType::E6 => star(&[1, 2, 2]),
            FiniteType::E7 => star(&[1, 2, 3]),
            FiniteType::E8 => star(&[1, 2, 4]),
            FiniteType::F4 => (4, with_bond(path(4), 1, 2, 2)),
            FiniteType::G2 => (2, vec![(0, 1, 3)]),
        }
    }

    /// Form (*) Cartan matrix of this type.
    pub fn cartan(self) -> CartanMatrix {
        let (n, bonds) = self.bonds();
        from_bond_list(n, &bonds)
    }

    /// Catalog entries of a given rank.
    pub fn of_rank(k: usize) -> Vec<FiniteType> {
        let mut out = Vec::new();
        if k >= 1 {
            out.push(FiniteType::A(k));
        }
        if k >= 2 {
            out.push(FiniteType::B(k));
        }
        if k >= 4 {
            out.push(FiniteType::D(k));
        }
        match k {
            2 => out.push(FiniteType::G2),
            4 => out.push(FiniteType::F4),
            6 => out.push(FiniteType::E6),
            7 => out.push(FiniteType::E7),
            8 => out.push(FiniteType::E8),
            _ => {}
        }
        out
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::G2 => f.write_str("G2"),
        }
    }
}

impl AffineType {
    /// The finite diagram this one extends.
    pub fn base(self) -> FiniteType {
        match self {
            AffineType::A(n) => FiniteType::A(n),
            AffineType::B(n) | AffineType::C(n) => FiniteType::B(n),
            AffineType::D(n) => FiniteType::D(n),
            AffineType::E6 => FiniteType::E6,
            AffineType::E7 => FiniteType::E7,
            AffineType::E8 => FiniteType::E8,
            AffineType::F4 => FiniteType::F4,
            AffineType::G2 => FiniteType::G2,
        }
    }

    fn bonds(self) -> (usize, Bonds) {
        match self {
            AffineType::A(1) => (2, vec![(0, 1, 4)]),
            AffineType::A(n) => (n + 1, with_bond(path(n + 1), n, 0, 1)),
            AffineType::B(2) | AffineType::C(2) => (3, with_bond(with_bond(path(3), 0, 1, 2), 1, 2, 2)),
            AffineType::B(n) => {
                // fork 0,1 -> 2, path 2..n, double bond at the far end
                let mut bonds = vec![(0, 2, 1), (1, 2, 1)];
                bonds.extend((3..=n).map(|i| (i - 1, i, 1)));
                (n + 1, with_bond(bonds, n - 1, n, 2))
            }
            AffineType::C(n) => {
                let bonds = with_bond(path(n + 1), 0, 1, 2);
                (n + 1, with_bond(bonds, n - 1, n, 2))
            }
            AffineType::D(n) => {
                let mut bonds = vec![(0, 2, 1), (1, 2, 1)];
                bonds.extend((3..=n - 2).map(|i| (i - 1, i, 1)));
                bonds.push((n - 2, n - 1, 1));
                bonds.push((n - 2, n, 1));
                (n + 1, bonds)
            }
            AffineType::E6 => star(&[2, 2, 2]),
            AffineType::E7 => star(&[1, 3, 3]),
            AffineType::E8 => star(&[1, 2, 5]),
            AffineType::F4 => (5, with_bond(path(5), 2, 3, 2)),
            AffineType::G2 => (3, with_bond(path(3), 1, 2, 3)),
        }
    }

    /// Form (*) Cartan matrix of the extended diagram.
    pub fn cartan(self) -> CartanMatrix {
        let (n, bonds) = self.bonds();
        from_bond_list(n, &bonds)
    }

    /// Every untwisted affine diagram with at most `max_nodes` vertices.
    pub fn all_up_to(max_nodes: usize) -> Vec<AffineType> {
        let mut out = Vec::new();
        for l in 1..max_nodes {
            out.push(AffineType::A(l));
            if l >= 3 {
                out.push(AffineType::B(l));
            }
            if l >= 2 {
                out.push(AffineType::C(l));
            }
            if l >= 4 {
                out.push(AffineType::D(l));
            }
        }
        for (t, nodes) in [
            (AffineType::E6, 7),
            (AffineType::E7, 8),
            (AffineType::E8, 9),
            (AffineType::F4, 5),
            (AffineType::G2, 3),
        ] {
            if nodes <= max_nodes {
                out.push(t);
            }
        }
        out
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "A{n}~"),
            AffineType::B(n) => write!(f, "B{n}~"),
            AffineType::C(n) => write!(f, "C{n}~"),
            AffineType::D(n) => write!(f, "D{n}~"),
            AffineType::E6 => f.write_str("E6~"),
            AffineType::E7 => f.write_str("E7~"),
            AffineType::E8 => f.write_str("E8~"),
            AffineType::F4 => f.write_str("F4~"),
            AffineType::G2 => f.write_str("G2~"),
        }
    }
}

fn bond_table(a: &CartanMatrix) -> Vec<Vec<u8>> {
    let n = a.rank();
    (0..n).map(|i| (0..n).map(|j| a.bond(i, j)).collect()).collect()
}

fn signature(t: &[Vec<u8>], v: usize) -> Vec<u8> {
    let mut s: Vec<u8> = t[v].iter().copied().filter(|&b| b > 0).collect();
    s.sort_unstable();
    s
}

/// Whether the bond graphs of `x` and `y` are isomorphic.
pub(crate) fn bond_isomorphic(x: &CartanMatrix, y: &CartanMatrix) -> bool {
    let n = x.rank();
    if n != y.rank() {
        return false;
    }
    let (tx, ty) = (bond_table(x), bond_table(y));
    let sx: Vec<_> = (0..n).map(|v| signature(&tx, v)).collect();
    let sy: Vec<_> = (0..n).map(|v| signature(&ty, v)).collect();
    let (mut a, mut b) = (sx.clone(), sy.clone());
    a.sort();
    b.sort();
    if a != b {
        return false;
    }
    // assign x-vertices in BFS order so each new vertex touches an assigned one
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in 0..n {
                if !seen[w] && tx[v][w] > 0 {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, &tx, &ty, &sx, &sy, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    tx: &[Vec<u8>],
    ty: &[Vec<u8>],
    sx: &[Vec<u8>],
    sy: &[Vec<u8>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..ty.len() {
        if used[w] || sx[v] != sy[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| tx[v][u] == ty[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(depth + 1, order, tx, ty, sx, sy, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Catalog label of a connected component, matched by Coxeter graph.
/// Returns `None` when the component is not a finite Dynkin diagram.
pub fn recognize(component: &CartanMatrix) -> Option<FiniteType> {
    FiniteType::of_rank(component.rank())
        .into_iter()
        .find(|t| bond_isomorphic(&t.cartan(), component))
}

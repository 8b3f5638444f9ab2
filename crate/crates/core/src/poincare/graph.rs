//! Bond graphs: the part of a Cartan matrix the Weyl group depends on.

use crate::cartan::{CartanMatrix, FiniteType};

/// Canonical-or-sorted byte encoding of a bond graph: `[n, b_01, b_02, ...,
/// b_(n-2)(n-1)]` under some vertex ordering. Equal keys always mean
/// isomorphic graphs; isomorphic graphs get equal keys whenever the search
/// below is small enough to run to completion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondKey(pub(crate) Vec<u8>);

impl BondKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Option<BondKey> {
        let n = *bytes.first()? as usize;
        (bytes.len() == 1 + n * n.saturating_sub(1) / 2).then_some(BondKey(bytes))
    }

    pub fn rank(&self) -> usize {
        self.0[0] as usize
    }
}

const PERMUTATION_BUDGET: usize = 5040;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BondGraph {
    n: usize,
    b: Vec<u8>,
}

impl BondGraph {
    pub fn from_cartan(a: &CartanMatrix) -> BondGraph {
        let n = a.rank();
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[i * n + j] = a.bond(i, j);
            }
        }
        BondGraph { n, b }
    }

    #[cfg(test)]
    pub fn from_key(key: &BondKey) -> BondGraph {
        let n = key.rank();
        let mut b = vec![0; n * n];
        let mut it = key.0[1..].iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                b[i * n + j] = v;
                b[j * n + i] = v;
            }
        }
        BondGraph { n, b }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bond(&self, i: usize, j: usize) -> u8 {
        self.b[i * self.n + j]
    }

    pub fn sub(&self, verts: &[usize]) -> BondGraph {
        let k = verts.len();
        let mut b = Vec::with_capacity(k * k);
        for &i in verts {
            for &j in verts {
                b.push(self.bond(i, j));
            }
        }
        BondGraph { n: k, b }
    }

    pub fn to_cartan(&self) -> CartanMatrix {
        CartanMatrix::from_bonds(self.n, |i, j| self.bond(i, j))
    }

    /// Connected components of the induced subgraph on `mask`.
    pub fn components_of(&self, mask: u32) -> Vec<Vec<usize>> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            left &= !(1 << start);
            let mut comp = vec![start];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                let mut rest = left;
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.bond(v, w) > 0 {
                        left &= !(1 << w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + self.n * (self.n.saturating_sub(1)) / 2);
        out.push(self.n as u8);
        for (x, &i) in order.iter().enumerate() {
            for &j in &order[x + 1..] {
                out.push(self.bond(i, j));
            }
        }
        out
    }

    /// Vertex colors after one round of refinement by neighbor bonds.
    fn colors(&self) -> Vec<Vec<u8>> {
        let base: Vec<Vec<u8>> = (0..self.n)
            .map(|v| {
                let mut s: Vec<u8> = (0..self.n).map(|w| self.bond(v, w)).filter(|&x| x > 0).collect();
                s.sort_unstable();
                s
            })
            .collect();
        (0..self.n)
            .map(|v| {
                let mut nbrs: Vec<Vec<u8>> = (0..self.n)
                    .filter(|&w| self.bond(v, w) > 0)
                    .map(|w| {
                        let mut c = vec![self.bond(v, w)];
                        c.extend(&base[w]);
                        c
                    })
                    .collect();
                nbrs.sort();
                let mut c = base[v].clone();
                c.push(u8::MAX);
                for x in nbrs {
                    c.extend(x);
                    c.push(u8::MAX);
                }
                c
            })
            .collect()
    }

    pub fn key(&self) -> BondKey {
        let colors = self.colors();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&x, &y| colors[x].cmp(&colors[y]).then(x.cmp(&y)));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(g) if colors[g[0]] == colors[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut count = 1usize;
        for g in &groups {
            for k in 2..=g.len() {
                count = count.saturating_mul(k);
            }
        }
        if count > PERMUTATION_BUDGET {
            return BondKey(self.encode(&order));
        }
        let mut best: Option<Vec<u8>> = None;
        let mut current = Vec::with_capacity(self.n);
        self.search(&mut groups, 0, &mut current, &mut best);
        BondKey(best.unwrap())
    }

    fn search(&self, groups: &mut [Vec<usize>], gi: usize, current: &mut Vec<usize>, best: &mut Option<Vec<u8>>) {
        if gi == groups.len() {
            let enc = self.encode(current);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        let len = groups[gi].len();
        permute(&mut groups[gi].clone(), len, &mut |perm: &[usize]| {
            current.extend_from_slice(perm);
            self.search(groups, gi + 1, current, best);
            current.truncate(current.len() - perm.len());
        });
    }
}

/// Heap's algorithm.
fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        permute(items, k - 1, f);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

pub(crate) fn finite_label_code(t: FiniteType) -> (u8, u8) {
    match t {
        FiniteType::A(n) => (0, n as u8),
        FiniteType::B(n) => (1, n as u8),
        FiniteType::D(n) => (2, n as u8),
        FiniteType::E6 => (3, 6),
        FiniteType::E7 => (3, 7),
        FiniteType::E8 => (3, 8),
        FiniteType::F4 => (4, 4),
        FiniteType::G2 => (5, 2),
    }
}

pub(crate) fn finite_label_decode(tag: u8, n: u8) -> Option<FiniteType> {
    Some(match (tag, n) {
        (0, n) => FiniteType::A(n as usize),
        (1, n) => FiniteType::B(n as usize),
        (2, n) => FiniteType::D(n as usize),
        (3, 6) => FiniteType::E6,
        (3, 7) => FiniteType::E7,
        (3, 8) => FiniteType::E8,
        (4, 4) => FiniteType::F4,
        (5, 2) => FiniteType::G2,
        _ => return None,
    })
}

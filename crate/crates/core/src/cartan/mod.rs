//! Generalized Cartan matrices and Coxeter graphs.
//!
//! Indices are 0-based throughout the library; the JSON input format and the
//! CLI use 1-based vertex numbers.
//!
//! A pair `i != j` is summarized by its *bond*: the product `a_ij * a_ji`
//! clamped to 4. Bonds 0, 1, 2, 3, 4 correspond to Coxeter exponents
//! `m_ij = 2, 3, 4, 6, infinity`, so the Weyl group, and with it the Poincaré
//! series, depends on the bonds alone.

mod catalog;
mod classify;

pub use catalog::{recognize, AffineType, FiniteType};
pub use classify::{classify, determinant, Component, Kind, TypeClass};

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Coxeter exponent for a bond class; `None` is infinity.
pub fn bond_to_coxeter(bond: u8) -> Option<u32> {
    match bond {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// Below/above-diagonal entries `(a_ij, a_ji)`, `i > j`, of the form (*)
/// representative for a bond.
pub fn bond_entries(bond: u8) -> (i64, i64) {
    match bond {
        0 => (0, 0),
        b => (-(b.min(4) as i64), -1),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    a: Vec<i64>,
}

impl CartanMatrix {
    /// Validates the three axioms: `a_ii = 2`, `a_ij <= 0` off the diagonal,
    /// and `a_ij = 0` exactly when `a_ji = 0`.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut a = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "matrix is not square: row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            a.extend(row);
        }
        Self::from_flat(n, a)
    }

    pub fn from_flat(n: usize, a: Vec<i64>) -> Result<Self> {
        if n == 0 || a.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for rank {n}, got {}",
                n * n,
                a.len()
            )));
        }
        let m = CartanMatrix { n, a };
        m.check_axioms()?;
        Ok(m)
    }

    fn check_axioms(&self) -> Result<()> {
        for i in 0..self.n {
            if self.get(i, i) != 2 {
                return Err(Error::InvalidMatrix(format!(
                    "a[{0}][{0}] = {1}, diagonal entries must be 2",
                    i + 1,
                    self.get(i, i)
                )));
            }
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let (x, y) = (self.get(i, j), self.get(j, i));
                if x > 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "a[{}][{}] = {x} is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if x == 0 && y != 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "a[{}][{}] = 0 but a[{}][{}] = {y}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds the form (*) representative from a symmetric bond table.
    pub fn from_bonds(n: usize, bond: impl Fn(usize, usize) -> u8) -> CartanMatrix {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 2;
            for j in 0..i {
                let (lo, hi) = bond_entries(bond(i, j));
                a[i * n + j] = lo;
                a[j * n + i] = hi;
            }
        }
        CartanMatrix { n, a }
    }

    /// Number of rows (the number of simple roots).
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    /// `min(a_ij * a_ji, 4)`, zero on the diagonal.
    pub fn bond(&self, i: usize, j: usize) -> u8 {
        if i == j {
            return 0;
        }
        let p = (self.get(i, j) as i128) * (self.get(j, i) as i128);
        p.min(4) as u8
    }

    /// Coxeter exponent `m_ij`; `None` is infinity.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            Some(1)
        } else {
            bond_to_coxeter(self.bond(i, j))
        }
    }

    /// Principal sub-matrix on `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> CartanMatrix {
        let k = idx.len();
        let mut a = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                a.push(self.get(i, j));
            }
        }
        CartanMatrix { n: k, a }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &CartanMatrix) -> CartanMatrix {
        let n = self.n + other.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = if i < self.n && j < self.n {
                    self.get(i, j)
                } else if i >= self.n && j >= self.n {
                    other.get(i - self.n, j - self.n)
                } else {
                    0
                };
            }
        }
        CartanMatrix { n, a }
    }

    /// Same matrix with rows and columns reordered: entry `(i, j)` of the
    /// result is entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> CartanMatrix {
        assert_eq!(perm.len(), self.n);
        self.principal(perm)
    }

    /// The form (*) representative with the same Coxeter matrix: below the
    /// diagonal the clamped product, above it `-1` (or `0`).
    pub fn normalize(&self) -> CartanMatrix {
        Self::from_bonds(self.n, |i, j| self.bond(i, j))
    }

    /// Connected components of the graph with an edge `i - j` whenever
    /// `a_ij != 0`. Each component is sorted; components are ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in 0..self.n {
                    if !seen[w] && self.get(v, w) != 0 {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Positive integers `d_i` with `d_i a_ij = d_j a_ji`, if they exist.
    ///
    /// Ratios are propagated along a BFS spanning forest and then checked on
    /// every pair. The witness is scaled to coprime integers per component.
    pub fn symmetrizer(&self) -> Option<Vec<BigInt>> {
        let mut d: Vec<Option<BigRational>> = vec![None; self.n];
        for comp in self.components() {
            let root = comp[0];
            d[root] = Some(BigRational::one());
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].clone().unwrap();
                for j in 0..self.n {
                    if i != j && self.get(i, j) != 0 && d[j].is_none() {
                        // d_j = d_i * a_ij / a_ji
                        let r = BigRational::new(self.get(i, j).into(), self.get(j, i).into());
                        d[j] = Some(&di * r);
                        queue.push_back(j);
                    }
                }
            }
        }
        let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
        for i in 0..self.n {
            for j in 0..self.n {
                let lhs = &d[i] * BigInt::from(self.get(i, j));
                let rhs = &d[j] * BigInt::from(self.get(j, i));
                if lhs != rhs {
                    return None;
                }
            }
        }
        let mut out: Vec<BigInt> = vec![BigInt::zero(); self.n];
        for comp in self.components() {
            let l = comp.iter().fold(BigInt::one(), |acc, &i| acc.lcm(d[i].denom()));
            let scaled: Vec<BigInt> = comp.iter().map(|&i| (&d[i] * &l).to_integer()).collect();
            let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            for (&i, s) in comp.iter().zip(scaled) {
                out[i] = s / &g;
            }
        }
        debug_assert!(out.iter().all(Signed::is_positive));
        Some(out)
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrizer().is_some()
    }

    /// Coxeter graph with edge multiplicity equal to the bond.
    pub fn coxeter_graph(&self) -> CoxeterGraph {
        let mut edges = BTreeMap::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let b = self.bond(i, j);
                if b > 0 {
                    edges.insert((i, j), b as u32);
                }
            }
        }
        CoxeterGraph { n: self.n, edges }
    }
}

impl fmt::Debug for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanMatrix{:?}", self.rows())
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

/// Undirected multigraph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    /// `(i, j)` with `i < j` to multiplicity; zero multiplicities are not stored.
    edges: BTreeMap<(usize, usize), u32>,
}

impl CoxeterGraph {
    /// `edges` are 0-based `(i, j, multiplicity)` triples.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("graph must have at least one vertex".into()));
        }
        let mut map = BTreeMap::new();
        for (i, j, m) in edges {
            if i >= n || j >= n {
                return Err(Error::Parse(format!(
                    "edge ({}, {}) refers to a vertex outside 1..={n}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::Parse(format!("self-loop at vertex {}", i + 1)));
            }
            let key = (i.min(j), i.max(j));
            if map.contains_key(&key) {
                return Err(Error::Parse(format!(
                    "edge ({}, {}) listed twice",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
            if m > 0 {
                map.insert(key, m);
            }
        }
        Ok(CoxeterGraph { n, edges: map })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    /// Form (*) Cartan matrix: multiplicity 0, 1, 2, 3, >=4 gives the pair
    /// `(0,0), (-1,-1), (-2,-1), (-3,-1), (-4,-1)`, the larger entry below
    /// the diagonal.
    pub fn to_cartan(&self) -> CartanMatrix {
        CartanMatrix::from_bonds(self.n, |i, j| self.multiplicity(i, j).min(4) as u8)
    }
}

pub fn to_cartan(g: &CoxeterGraph) -> CartanMatrix {
    g.to_cartan()
}

/// Parsed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Cartan(CartanMatrix),
    Graph(CoxeterGraph),
}

impl Input {
    pub fn into_cartan(self) -> CartanMatrix {
        match self {
            Input::Cartan(a) => a,
            Input::Graph(g) => g.to_cartan(),
        }
    }
}

/// Parses `{"cartan": [[...]]}` or
/// `{"coxeter_graph": {"n": int, "edges": [[i, j, multiplicity], ...]}}`
/// with 1-based vertices.
pub fn parse(source: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(source).map_err(|e| Error::Parse(e.to_string()))?;
    parse_value(&v)
}

pub fn parse_value(v: &Value) -> Result<Input> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be a JSON object".into()))?;
    match (obj.get("cartan"), obj.get("coxeter_graph")) {
        (Some(rows), None) => parse_cartan(rows).map(Input::Cartan),
        (None, Some(g)) => parse_graph(g).map(Input::Graph),
        (Some(_), Some(_)) => Err(Error::Parse(
            "document has both \"cartan\" and \"coxeter_graph\"".into(),
        )),
        (None, None) => Err(Error::Parse("expected a \"cartan\" or \"coxeter_graph\" key".into())),
    }
}

fn as_int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("{what} must be an integer, got {v}")))
}

fn parse_cartan(rows: &Value) -> Result<CartanMatrix> {
    let rows = rows
        .as_array()
        .ok_or_else(|| Error::Parse("\"cartan\" must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row {} is not an array", i + 1)))?;
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| as_int(x, &format!("a[{}][{}]", i + 1, j + 1)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    CartanMatrix::new(out)
}

fn parse_graph(g: &Value) -> Result<CoxeterGraph> {
    let n = g
        .get("n")
        .ok_or_else(|| Error::Parse("coxeter_graph needs \"n\"".into()))
        .and_then(|v| as_int(v, "n"))?;
    if n <= 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    let empty = Vec::new();
    let edges = match g.get("edges") {
        None => &empty,
        Some(e) => e
            .as_array()
            .ok_or_else(|| Error::Parse("\"edges\" must be an array".into()))?,
    };
    let mut triples = Vec::with_capacity(edges.len());
    for e in edges {
        let t = e
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| Error::Parse(format!("edge {e} must be [i, j, multiplicity]")))?;
        let i = as_int(&t[0], "edge vertex")?;
        let j = as_int(&t[1], "edge vertex")?;
        let m = as_int(&t[2], "edge multiplicity")?;
        if i < 1 || j < 1 {
            return Err(Error::Parse(format!("edge {e}: vertices are 1-based")));
        }
        if m < 0 {
            return Err(Error::Parse(format!("edge {e}: negative multiplicity")));
        }
        triples.push(((i - 1) as usize, (j - 1) as usize, m.min(u32::MAX as i64) as u32));
    }
    CoxeterGraph::new(n as usize, triples)
}

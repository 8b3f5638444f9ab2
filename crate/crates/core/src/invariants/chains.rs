//! Descending subset chains and the expansion of `1/P(A)` over them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::poincare::{BondGraph, PoincareEngine};
use crate::ratfunc::{IntPoly, RatFunc};

/// Rank ceiling for enumerating infinite and quasi-infinite chains.
pub const MAX_CHAIN_RANK: usize = 12;
/// Rank ceiling for enumerating every chain.
pub const MAX_ALL_CHAINS_RANK: usize = 7;

/// `S = I_0 > I_1 > ... > I_r`, subsets as bitmasks over the index set,
/// with `dims[j] = D_(I_j)` (`None` when `A_(I_j)` is not of finite type).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub subsets: Vec<u32>,
    pub dims: Vec<Option<u64>>,
}

impl Chain {
    /// Chain length `r`.
    pub fn length(&self) -> usize {
        self.subsets.len() - 1
    }

    pub fn is_infinite(&self) -> bool {
        self.dims.iter().all(Option::is_none)
    }

    pub fn is_quasi_infinite(&self) -> bool {
        let r = self.length();
        self.dims[..r].iter().all(Option::is_none) && self.subsets[r].count_ones() == 1
    }

    /// Subsets as sorted 1-based index lists.
    pub fn index_lists(&self) -> Vec<Vec<usize>> {
        self.subsets
            .iter()
            .map(|&m| (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
            .collect()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .index_lists()
            .iter()
            .map(|l| {
                let s: Vec<String> = l.iter().map(ToString::to_string).collect();
                format!("{{{}}}", s.join(","))
            })
            .collect();
        f.write_str(&parts.join(" > "))
    }
}

/// Infinite and quasi-infinite chains of a matrix.
#[derive(Clone, Debug, Default)]
pub struct Chains {
    pub infinite: Vec<Chain>,
    pub quasi_infinite: Vec<Chain>,
}

struct SubsetTable {
    n: usize,
    dims: Vec<Option<u64>>,
}

impl SubsetTable {
    fn build(engine: &PoincareEngine, a: &CartanMatrix) -> Result<SubsetTable> {
        let n = a.rank();
        let g = BondGraph::from_cartan(a);
        let dims = (0..1u32 << n)
            .map(|m| Ok(engine.subset_of(&g, m)?.dim))
            .collect::<Result<_>>()?;
        Ok(SubsetTable { n, dims })
    }

    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    fn chain(&self, subsets: &[u32]) -> Chain {
        Chain {
            subsets: subsets.to_vec(),
            dims: subsets.iter().map(|&m| self.dims[m as usize]).collect(),
        }
    }
}

/// Proper nonempty submasks of `m` in increasing order.
fn proper_submasks(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut s = (m - 1) & m;
    while s != 0 {
        out.push(s);
        s = (s - 1) & m;
    }
    out.reverse();
    out
}

fn check_scope(engine: &PoincareEngine, a: &CartanMatrix, limit: usize) -> Result<()> {
    if a.rank() > limit {
        return Err(Error::RankLimit { rank: a.rank(), limit });
    }
    if a.rank() == 0 || engine.is_finite(a)? {
        return Err(Error::Precondition(
            "chains need a matrix of affine or indefinite type".into(),
        ));
    }
    Ok(())
}

pub fn chains(engine: &PoincareEngine, a: &CartanMatrix) -> Result<Chains> {
    check_scope(engine, a, MAX_CHAIN_RANK)?;
    let table = SubsetTable::build(engine, a)?;
    let mut out = Chains::default();
    let mut path = vec![table.full()];
    walk(&table, &mut path, &mut out);
    Ok(out)
}

fn walk(table: &SubsetTable, path: &mut Vec<u32>, out: &mut Chains) {
    out.infinite.push(table.chain(path));
    let top = *path.last().unwrap();
    for sub in proper_submasks(top) {
        path.push(sub);
        if sub.count_ones() == 1 {
            out.quasi_infinite.push(table.chain(path));
        } else if table.dims[sub as usize].is_none() {
            walk(table, path, out);
        }
        path.pop();
    }
}

/// Every chain starting at the full index set.
pub fn all_chains(engine: &PoincareEngine, a: &CartanMatrix) -> Result<Vec<Chain>> {
    check_scope(engine, a, MAX_ALL_CHAINS_RANK)?;
    let table = SubsetTable::build(engine, a)?;
    let mut out = Vec::new();
    let mut path = vec![table.full()];
    walk_all(&table, &mut path, &mut out);
    Ok(out)
}

fn walk_all(table: &SubsetTable, path: &mut Vec<u32>, out: &mut Vec<Chain>) {
    out.push(table.chain(path));
    for sub in proper_submasks(*path.last().unwrap()) {
        path.push(sub);
        walk_all(table, path, out);
        path.pop();
    }
}

/// `t^D + (-1)^(|I|+1)`, with `t^D = 0` for infinite `D`.
fn factor(size: u32, dim: Option<u64>) -> RatFunc {
    let sign = if size % 2 == 1 { 1 } else { -1 };
    let mut p = IntPoly::from_i64s(&[sign]);
    if let Some(d) = dim {
        p = &p + &IntPoly::monomial(BigInt::one(), d as usize);
    }
    RatFunc::from_poly(p)
}

/// Signed weight `H_T` of a chain.
pub fn chain_weight(chain: &Chain) -> RatFunc {
    let mut h = RatFunc::one();
    for j in 1..chain.subsets.len() {
        let sign = if chain.subsets[j].count_ones() % 2 == 0 { 1 } else { -1 };
        let f = factor(chain.subsets[j - 1].count_ones(), chain.dims[j - 1]);
        h = (&(&h * &RatFunc::from_integer(sign)) / &f).expect("nonzero factor");
    }
    let r = chain.length();
    (&h / &factor(chain.subsets[r].count_ones(), chain.dims[r])).expect("nonzero factor")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KInvariants {
    pub k0: i64,
    pub k1: i64,
}

pub fn k_invariants(engine: &PoincareEngine, a: &CartanMatrix) -> Result<KInvariants> {
    if !a.is_connected() {
        return Err(Error::Precondition("matrix must be indecomposable".into()));
    }
    let c = chains(engine, a)?;
    let mut k0 = 0i64;
    for ch in &c.infinite {
        let w = chain_weight(ch)
            .as_polynomial()
            .and_then(|p| p.constant_term().to_i64());
        k0 += w.ok_or_else(|| Error::TheoremViolation(format!("infinite chain {ch} has non-constant weight")))?;
    }
    let one_t = RatFunc::from_poly(IntPoly::from_i64s(&[1, 1]));
    let mut k1 = 0i64;
    for ch in &c.quasi_infinite {
        let w = (&chain_weight(ch) * &one_t)
            .as_polynomial()
            .and_then(|p| p.constant_term().to_i64());
        k1 += w.ok_or_else(|| Error::TheoremViolation(format!("quasi-infinite chain {ch} has unexpected weight")))?;
    }
    Ok(KInvariants { k0, k1 })
}

/// Degree test for `P(A)` on a connected non-finite matrix, with the chain
/// invariants that predict it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClrReport {
    pub degree: i64,
    pub k: KInvariants,
    pub holds: bool,
    /// `lead(num) / lead(den)` of `P(A)`.
    pub leading_ratio: BigRational,
    /// Whether `leading_ratio` is `1/K_0` (or `1/K_1` when `K_0 = 0`).
    pub leading_ratio_matches: Option<bool>,
}

pub fn clr_check(engine: &PoincareEngine, a: &CartanMatrix) -> Result<ClrReport> {
    if !a.is_connected() {
        return Err(Error::Precondition("matrix must be indecomposable".into()));
    }
    if engine.is_finite(a)? {
        return Err(Error::Precondition("conjecture scope excludes finite type".into()));
    }
    let p = engine.series(a)?;
    let degree = p.degree().expect("nonzero series");
    let k = k_invariants(engine, a)?;
    let predicted = if k.k0 != 0 {
        Some(0)
    } else if k.k1 != 0 {
        Some(1)
    } else {
        None
    };
    let consistent = match predicted {
        Some(d) => degree == d,
        None => degree != 0 && degree != 1,
    };
    if !consistent || degree < 0 {
        return Err(Error::TheoremViolation(format!(
            "degree {degree} contradicts K0 = {}, K1 = {}",
            k.k0, k.k1
        )));
    }
    let leading_ratio = BigRational::new(p.num().leading().unwrap().clone(), p.den().leading().unwrap().clone());
    let leading_ratio_matches = match (k.k0, k.k1) {
        (0, 0) => None,
        (0, k1) => Some(leading_ratio == BigRational::new(1.into(), k1.into())),
        (k0, _) => Some(leading_ratio == BigRational::new(1.into(), k0.into())),
    };
    Ok(ClrReport {
        degree,
        k,
        holds: (0..=1).contains(&degree),
        leading_ratio,
        leading_ratio_matches,
    })
}
